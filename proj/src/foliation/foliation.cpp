#include "pseudoabel/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pseudoabel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap(double a) {
  while (a > kTwoPi / 2) a -= kTwoPi;
  while (a <= -kTwoPi / 2) a += kTwoPi;
  return a;
}

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

}  // namespace

double Box::diameter() const { return std::hypot(xmax - xmin, ymax - ymin); }

DarbouxSystem::DarbouxSystem(std::vector<Polynomial2> polys,
                             std::vector<double> exponents, Box box)
    : polys_(std::move(polys)), exponents_(std::move(exponents)), box_(box) {
  if (polys_.empty() || polys_.size() != exponents_.size()) {
    fail(ErrorCode::Domain, "need one exponent per polynomial");
  }
  for (std::size_t j = 0; j < polys_.size(); ++j) {
    if (polys_[j].is_constant()) fail(ErrorCode::Domain, "polynomials must be nonconstant");
    if (!(exponents_[j] > 0.0) || !std::isfinite(exponents_[j])) {
      fail(ErrorCode::Domain, "exponents must be positive");
    }
    dx_.push_back(polys_[j].dx());
    dy_.push_back(polys_[j].dy());
    dxx_.push_back(dx_[j].dx());
    dxy_.push_back(dx_[j].dy());
    dyy_.push_back(dy_[j].dy());
  }
  // Only catches a factor shared in full; a common proper factor passes.
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    for (std::size_t j = 0; j < polys_.size(); ++j) {
      if (i != j && polys_[j].degree() <= polys_[i].degree() &&
          polys_[i].divide_exact(polys_[j])) {
        fail(ErrorCode::Domain, "polynomials must be pairwise coprime");
      }
    }
  }
  if (!(box_.xmin < box_.xmax && box_.ymin < box_.ymax)) {
    fail(ErrorCode::Domain, "empty bounding box");
  }
}

double DarbouxSystem::min_p(double x, double y) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : polys_) m = std::min(m, p(x, y));
  return m;
}

double DarbouxSystem::log_f(double x, double y) const {
  double F = 0.0;
  for (std::size_t j = 0; j < polys_.size(); ++j) {
    const double v = polys_[j](x, y);
    if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
    F += exponents_[j] * std::log(v);
  }
  return F;
}

Vec2 DarbouxSystem::grad_log_f(double x, double y) const {
  Vec2 g;
  for (std::size_t j = 0; j < polys_.size(); ++j) {
    const double v = polys_[j](x, y);
    g.x += exponents_[j] * dx_[j](x, y) / v;
    g.y += exponents_[j] * dy_[j](x, y) / v;
  }
  return g;
}

void DarbouxSystem::hessian_log_f(double x, double y, double h[3]) const {
  h[0] = h[1] = h[2] = 0.0;
  for (std::size_t j = 0; j < polys_.size(); ++j) {
    const double v = polys_[j](x, y);
    const double px = dx_[j](x, y);
    const double py = dy_[j](x, y);
    const double l = exponents_[j];
    h[0] += l * (dxx_[j](x, y) / v - px * px / (v * v));
    h[1] += l * (dxy_[j](x, y) / v - px * py / (v * v));
    h[2] += l * (dyy_[j](x, y) / v - py * py / (v * v));
  }
}

double first_integral_eval(const DarbouxSystem& sys, double x, double y) {
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (!(sys.p(j, x, y) > 0.0)) {
      fail(ErrorCode::BranchError, "p_j <= 0: outside the positive branch");
    }
  }
  return std::exp(sys.log_f(x, y));
}

Vec2 theta_eval(const DarbouxSystem& sys, double x, double y) {
  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (sys.p(j, x, y) == 0.0) fail(ErrorCode::OnSeparatrix, "point on {p_j = 0}");
  }
  return sys.grad_log_f(x, y);
}

namespace {

bool positive(const DarbouxSystem& sys, Vec2 p) {
  return sys.box().contains(p) && sys.min_p(p.x, p.y) > 0.0;
}

// Largest s along c + s d staying in the positive component and the box.
double ray_extent(const DarbouxSystem& sys, Vec2 c, Vec2 d) {
  const double diam = sys.box().diameter();
  double good = 0.0;
  double s = 1e-4 * diam;
  while (positive(sys, c + s * d)) {
    good = s;
    s *= 1.5;
    if (s > 4.0 * diam) return good;
  }
  double bad = s;
  for (int it = 0; it < 200 && bad - good > 1e-17 * diam; ++it) {
    const double mid = 0.5 * (good + bad);
    (positive(sys, c + mid * d) ? good : bad) = mid;
  }
  return good;
}

}  // namespace

CenterInfo find_center(const DarbouxSystem& sys, Vec2 seed) {
  if (!positive(sys, seed)) {
    fail(ErrorCode::NoCenterFound, "seed outside the positive component");
  }
  const double diam = sys.box().diameter();
  Vec2 x = seed;
  Vec2 g = sys.grad_log_f(x.x, x.y);
  for (int it = 0; it < 200; ++it) {
    if (norm(g) * diam <= 1e-14) break;
    double h[3];
    sys.hessian_log_f(x.x, x.y, h);
    const double det = h[0] * h[2] - h[1] * h[1];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
      fail(ErrorCode::NoCenterFound, "singular Hessian");
    }
    const Vec2 step{-(h[2] * g.x - h[1] * g.y) / det, -(-h[1] * g.x + h[0] * g.y) / det};
    double alpha = 1.0;
    Vec2 xn;
    Vec2 gn;
    for (;; alpha *= 0.5) {
      if (alpha < 1e-12) fail(ErrorCode::NoCenterFound, "Newton line search failed");
      xn = x + alpha * step;
      if (!positive(sys, xn)) continue;
      gn = sys.grad_log_f(xn.x, xn.y);
      if (norm(gn) < norm(g) || norm(alpha * step) <= 1e-15 * diam) break;
    }
    const double moved = norm(alpha * step);
    x = xn;
    g = gn;
    if (moved <= 1e-16 * diam) break;
  }
  if (!(norm(g) * diam <= 1e-8)) fail(ErrorCode::NoCenterFound, "Newton did not converge");
  double h[3];
  sys.hessian_log_f(x.x, x.y, h);
  if (!(h[0] * h[2] - h[1] * h[1] > 0.0)) {
    fail(ErrorCode::NoCenterFound, "critical point is a saddle");
  }
  CenterInfo info;
  info.center = x;
  info.t_center = std::exp(sys.log_f(x.x, x.y));
  for (int k = 0; k < 16; ++k) {
    const double a = kTwoPi * k / 16;
    const Vec2 d{std::cos(a), std::sin(a)};
    const Vec2 end = x + ray_extent(sys, x, d) * d;
    info.t_low = std::max(info.t_low, std::exp(sys.log_f(end.x, end.y)));
  }
  return info;
}

namespace {

class Tracer {
 public:
  Tracer(const DarbouxSystem& sys, double level, double tol)
      : sys_(sys), L_(level), tol_(tol) {}

  std::optional<Vec2> field(Vec2 p) const {
    if (!positive(sys_, p)) return std::nullopt;
    const Vec2 g = sys_.grad_log_f(p.x, p.y);
    const double n = norm(g);
    if (!(n > 0.0) || !std::isfinite(n)) return std::nullopt;
    return Vec2{-g.y / n, g.x / n};
  }

  std::optional<Vec2> project(Vec2 p) const {
    for (int it = 0; it < 16; ++it) {
      if (!positive(sys_, p)) return std::nullopt;
      const double r = sys_.log_f(p.x, p.y) - L_;
      if (std::abs(r) <= 0.25 * tol_) return p;
      const Vec2 g = sys_.grad_log_f(p.x, p.y);
      const double g2 = g.x * g.x + g.y * g.y;
      p = p - (r / g2) * g;
    }
    if (positive(sys_, p) && std::abs(sys_.log_f(p.x, p.y) - L_) <= tol_) return p;
    return std::nullopt;
  }

  std::optional<Vec2> step(Vec2 p, double h) const {
    const auto k1 = field(p);
    if (!k1) return std::nullopt;
    const auto k2 = field(p + (0.5 * h) * *k1);
    if (!k2) return std::nullopt;
    const auto k3 = field(p + (0.5 * h) * *k2);
    if (!k3) return std::nullopt;
    const auto k4 = field(p + h * *k3);
    if (!k4) return std::nullopt;
    const Vec2 q = p + (h / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
    return project(q);
  }

 private:
  const DarbouxSystem& sys_;
  double L_;
  double tol_;
};

Vec2 default_seed(const DarbouxSystem& sys) {
  const Box& b = sys.box();
  Vec2 mid{0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)};
  if (positive(sys, mid)) return mid;
  // Coarse search for a positive point, preferring large min p_j.
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < 32; ++i) {
    for (int j = 1; j < 32; ++j) {
      const Vec2 p{b.xmin + (b.xmax - b.xmin) * i / 32, b.ymin + (b.ymax - b.ymin) * j / 32};
      const double m = sys.min_p(p.x, p.y);
      if (m > best) {
        best = m;
        mid = p;
      }
    }
  }
  return mid;
}

}  // namespace

Oval trace_oval(const DarbouxSystem& sys, double t, const TraceOptions& opts) {
  const CenterInfo ci = find_center(sys, opts.seed.value_or(default_seed(sys)));
  if (!(t > 0.0) || !(t < ci.t_center)) {
    fail(ErrorCode::Domain, "level must lie in (0, tCenter)");
  }
  const double L = std::log(t);
  const double tolF = opts.level_tol_rel;
  const Tracer tr(sys, L, tolF);
  const Vec2 c = ci.center;
  const double diam = sys.box().diameter();

  const Vec2 d{std::cos(opts.start_angle), std::sin(opts.start_angle)};
  const double s_end = ray_extent(sys, c, d);
  {
    const Vec2 e = c + s_end * d;
    if (sys.log_f(e.x, e.y) > L) {
      fail(ErrorCode::TraceDiverged, "level not reached along the start section");
    }
  }
  double s_lo = 0.0;
  double s_hi = s_end;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (s_lo + s_hi);
    const Vec2 p = c + mid * d;
    (sys.log_f(p.x, p.y) > L ? s_lo : s_hi) = mid;
  }
  const auto start_opt = tr.project(c + s_lo * d);
  if (!start_opt) fail(ErrorCode::TraceDiverged, "start point projection failed");
  const Vec2 start = *start_opt;

  const double h_max = opts.max_step_rel * diam;
  const double h_min = 1e-13 * diam;
  double h = 1e-3 * diam;
  std::vector<Vec2> pts{start};
  double acc = 0.0;
  double prev_ang = std::atan2(start.y - c.y, start.x - c.x);
  double arc = 0.0;
  Vec2 p = start;
  Vec2 end = start;
  bool closed = false;

  const auto turn = [&](Vec2 a, Vec2 b) -> std::optional<double> {
    const auto va = tr.field(a);
    const auto vb = tr.field(b);
    if (!va || !vb) return std::nullopt;
    return std::abs(std::atan2(va->x * vb->y - va->y * vb->x, va->x * vb->x + va->y * vb->y));
  };

  for (int steps = 0; steps < opts.max_steps; ++steps) {
    const auto q = tr.step(p, h);
    std::optional<double> tn;
    if (q) tn = turn(p, *q);
    if (!q || !tn || *tn > opts.max_turn) {
      h *= 0.5;
      if (h < h_min) fail(ErrorCode::SaddleTooClose, "step collapsed near a corner");
      continue;
    }
    const double ang = std::atan2(q->y - c.y, q->x - c.x);
    const double dA = wrap(ang - prev_ang);
    if (std::abs(acc + dA) >= kTwoPi) {
      // Land exactly on the start section.
      double lo = 0.0;
      double hi = 1.0;
      Vec2 best = *q;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto r = tr.step(p, mid * h);
        if (!r) {
          hi = mid;
          continue;
        }
        const double a2 = std::atan2(r->y - c.y, r->x - c.x);
        if (std::abs(acc + wrap(a2 - prev_ang)) >= kTwoPi) {
          hi = mid;
          best = *r;
        } else {
          lo = mid;
        }
      }
      end = best;
      arc += norm(end - p);
      closed = true;
      break;
    }
    acc += dA;
    prev_ang = ang;
    arc += norm(*q - p);
    p = *q;
    pts.push_back(p);
    if (*tn < opts.max_turn / 3) h = std::min(1.5 * h, h_max);
  }
  if (!closed) fail(ErrorCode::TraceDiverged, "no return to the start section");

  Oval ov;
  ov.t = t;
  ov.center = c;
  ov.arc_length = arc;
  ov.closure_gap = norm(end - start);
  ov.start_angle = opts.start_angle;
  if (ov.closure_gap > opts.trace_tol_rel * arc) {
    fail(ErrorCode::TraceDiverged, "closure gap exceeds tolerance");
  }
  double area2 = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Vec2 a = pts[k];
    const Vec2 b = pts[(k + 1) % pts.size()];
    area2 += a.x * b.y - a.y * b.x;
  }
  if (area2 < 0.0) std::reverse(pts.begin() + 1, pts.end());
  ov.points = std::move(pts);
  double wind = 0.0;
  double max_res = 0.0;
  for (std::size_t k = 0; k < ov.points.size(); ++k) {
    const Vec2 a = ov.points[k];
    auto v = *tr.field(a);
    if (area2 < 0.0) v = -1.0 * v;
    ov.tangents.push_back(v);
    const double res = t * std::abs(std::expm1(sys.log_f(a.x, a.y) - L));
    ov.residuals.push_back(res);
    max_res = std::max(max_res, res);
    const Vec2 b = ov.points[(k + 1) % ov.points.size()];
    wind += wrap(std::atan2(b.y - c.y, b.x - c.x) - std::atan2(a.y - c.y, a.x - c.x));
  }
  ov.winding = static_cast<int>(std::lround(wind / kTwoPi));
  if (max_res > opts.level_tol_rel * t) {
    fail(ErrorCode::TraceDiverged, "level drift exceeds tolerance");
  }
  return ov;
}

namespace {

// Gauss-Legendre, 5 points on [0, 1].
constexpr double kGLx[5] = {0.046910077030668004, 0.23076534494715845, 0.5,
                            0.76923465505284155, 0.953089922969332};
constexpr double kGLw[5] = {0.11846344252809454, 0.23931433524968324,
                            0.28444444444444444, 0.23931433524968324,
                            0.11846344252809454};

double form_along(const DarbouxSystem& sys, const AdmissibleForm& w,
                  const std::vector<Vec2>& P, const std::vector<Vec2>& T,
                  const std::vector<std::size_t>& idx) {
  double total = 0.0;
  const std::size_t n = idx.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 p0 = P[idx[k]];
    const Vec2 p1 = P[idx[(k + 1) % n]];
    const double ch = norm(p1 - p0);
    const Vec2 t0 = ch * T[idx[k]];
    const Vec2 t1 = ch * T[idx[(k + 1) % n]];
    double seg = 0.0;
    for (int g = 0; g < 5; ++g) {
      const double s = kGLx[g];
      const double s2 = s * s;
      const double s3 = s2 * s;
      const Vec2 x = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * t0 +
                     (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * t1;
      const Vec2 dx = (6 * s2 - 6 * s) * p0 + (3 * s2 - 4 * s + 1) * t0 +
                      (-6 * s2 + 6 * s) * p1 + (3 * s2 - 2 * s) * t1;
      double den = 1.0;
      for (std::size_t j = 0; j < w.denom_powers.size(); ++j) {
        if (w.denom_powers[j] == 0) continue;
        const double v = sys.p(j, x.x, x.y);
        if (!(v > 0.0)) fail(ErrorCode::PoleOnOval, "form has a pole on the oval");
        den *= std::pow(v, w.denom_powers[j]);
      }
      seg += kGLw[g] * (w.A(x.x, x.y) * dx.x + w.B(x.x, x.y) * dx.y) / den;
    }
    total += seg;
  }
  return total;
}

}  // namespace

IntegralResult integrate_form(const DarbouxSystem& sys, const Oval& oval,
                              const AdmissibleForm& omega) {
  if (omega.denom_powers.size() > sys.size()) {
    fail(ErrorCode::Domain, "more denominator powers than polynomials");
  }
  const std::size_t n = oval.points.size();
  if (n < 4) fail(ErrorCode::Domain, "oval has too few points");
  std::vector<std::size_t> fine(n);
  for (std::size_t k = 0; k < n; ++k) fine[k] = k;
  std::vector<std::size_t> coarse;
  for (std::size_t k = 0; k < n; k += 2) coarse.push_back(k);
  const double Ih = form_along(sys, omega, oval.points, oval.tangents, fine);
  const double I2h = form_along(sys, omega, oval.points, oval.tangents, coarse);
  return {Ih, std::abs(Ih - I2h) / 15.0};
}

namespace {

ScanSample scan_point(const DarbouxSystem& sys, const AdmissibleForm& omega,
                      double t, const TraceOptions& opts) {
  ScanSample s;
  s.t = t;
  try {
    const Oval ov = trace_oval(sys, t, opts);
    const IntegralResult r = integrate_form(sys, ov, omega);
    s.value = r.value;
    s.error = r.error;
  } catch (const Error& e) {
    s.value = std::numeric_limits<double>::quiet_NaN();
    s.error = std::numeric_limits<double>::quiet_NaN();
    s.status = std::string(to_string(e.code()));
  }
  return s;
}

}  // namespace

std::vector<ScanSample> integral_scan(const DarbouxSystem& sys,
                                      const AdmissibleForm& omega,
                                      std::span<const double> ts,
                                      const TraceOptions& opts) {
  std::vector<ScanSample> out(ts.size());
  const auto n = static_cast<std::ptrdiff_t>(ts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = scan_point(sys, omega, ts[k], opts);
  return out;
}

std::vector<ScanSample> integral_scan_serial(const DarbouxSystem& sys,
                                             const AdmissibleForm& omega,
                                             std::span<const double> ts,
                                             const TraceOptions& opts) {
  std::vector<ScanSample> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(scan_point(sys, omega, t, opts));
  return out;
}

AdmissibleForm theta_form(const DarbouxSystem& sys) {
  AdmissibleForm w;
  for (std::size_t j = 0; j < sys.size(); ++j) {
    Polynomial2 others = Polynomial2::constant(sys.exponents()[j]);
    for (std::size_t k = 0; k < sys.size(); ++k) {
      if (k != j) others = others * sys.polys()[k];
    }
    w.A = w.A + others * sys.polys()[j].dx();
    w.B = w.B + others * sys.polys()[j].dy();
  }
  w.denom_powers.assign(sys.size(), 1);
  w.max_pole_order = 1;
  return w;
}

AdmissibilityReport admissibility_check(const DarbouxSystem& sys,
                                        const AdmissibleForm& omega) {
  AdmissibilityReport rep;
  if (omega.denom_powers.size() != sys.size()) {
    rep.reason = "one denominator power per polynomial required";
    return rep;
  }
  int declared = omega.max_pole_order;
  if (declared < 0) {
    declared = 0;
    for (int k : omega.denom_powers) declared = std::max(declared, k);
  }
  for (std::size_t j = 0; j < sys.size(); ++j) {
    const int k = omega.denom_powers[j];
    if (k < 0) {
      rep.reason = "negative denominator power";
      return rep;
    }
    if (k > 0 && sys.polys()[j].is_zero()) {
      rep.reason = "zero denominator";
      return rep;
    }
    if (k > declared) {
      rep.reason = "denominator power exceeds the declared pole order";
      return rep;
    }
  }
  if (omega.A.is_zero() && omega.B.is_zero()) {
    rep.admissible = true;
    rep.effective_orders.assign(sys.size(), 0);
    rep.reason = "zero form";
    return rep;
  }
  for (std::size_t j = 0; j < sys.size(); ++j) {
    int e = omega.denom_powers[j];
    Polynomial2 A = omega.A;
    Polynomial2 B = omega.B;
    while (e > 0) {
      const auto qa = A.divide_exact(sys.polys()[j]);
      const auto qb = B.divide_exact(sys.polys()[j]);
      if (!qa || !qb) break;
      A = *qa;
      B = *qb;
      --e;
    }
    rep.effective_orders.push_back(e);
  }
  rep.admissible = true;
  return rep;
}

}  // namespace pseudoabel
