#include "pseudoabel/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pseudoabel/jseries.hpp"

namespace pseudoabel {

CornerArc corner_curve(double lambda, double mu, double t, int samples) {
  if (!(lambda > 0.0) || !(mu > 0.0)) fail(ErrorCode::Domain, "exponents must be positive");
  if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::Domain, "t must lie in (0, 1)");
  if (samples < 2) fail(ErrorCode::Domain, "need at least two samples");
  const double L = std::log(t);
  CornerArc arc;
  arc.x.resize(samples);
  arc.y.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) / (samples - 1);
    const double lx = (L / lambda) * (1.0 - s);
    arc.x[k] = std::exp(lx);
    arc.y[k] = std::exp((L - lambda * lx) / mu);
  }
  arc.x.front() = std::exp(L / lambda);
  arc.y.front() = 1.0;
  arc.x.back() = 1.0;
  arc.y.back() = std::exp(L / mu);
  return arc;
}

double corner_monomial_integral(int p, int q, double lambda, double mu, double t) {
  if (!(lambda > 0.0) || !(mu > 0.0)) fail(ErrorCode::Domain, "exponents must be positive");
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::Domain, "t must lie in (0, 1]");
  if (t == 1.0) return 0.0;
  return -compensator(p / lambda, q / mu, Complex(std::log(t), 0.0)).real() / lambda;
}

namespace {

double norm2(Vec2 v) { return std::hypot(v.x, v.y); }

struct Raw {
  Vec2 value;
  double jac[4];  // d(X,Y)/d(x,y), row major
  bool ok = false;
};

}  // namespace

// psi = (s_X p_i, s_Y p_j prod_{k != i,j} p_k^{lambda_k / mu}).
static Raw corner_raw(const CornerMap& m, double x, double y) {
  const DarbouxSystem& sys = *m.sys;
  Raw r;
  const double sX = std::pow(m.normalization, -0.5 / m.lambda);
  const double sY = std::pow(m.normalization, -0.5 / m.mu);
  double logPi = 0.0;
  Vec2 gPi;  // grad log Pi
  for (std::size_t k = 0; k < sys.size(); ++k) {
    if (static_cast<int>(k) == m.i || static_cast<int>(k) == m.j) continue;
    const double v = sys.p(k, x, y);
    if (!(v > 0.0)) return r;
    const double e = sys.exponents()[k] / m.mu;
    logPi += e * std::log(v);
    const Vec2 g = sys.grad(k, x, y);
    gPi.x += e * g.x / v;
    gPi.y += e * g.y / v;
  }
  const double Pi = std::exp(logPi);
  const double pi = sys.p(m.i, x, y);
  const double pj = sys.p(m.j, x, y);
  const Vec2 gi = sys.grad(m.i, x, y);
  const Vec2 gj = sys.grad(m.j, x, y);
  r.value = {sX * pi, sY * pj * Pi};
  r.jac[0] = sX * gi.x;
  r.jac[1] = sX * gi.y;
  r.jac[2] = sY * Pi * (gj.x + pj * gPi.x);
  r.jac[3] = sY * Pi * (gj.y + pj * gPi.y);
  r.ok = true;
  return r;
}

Vec2 CornerMap::forward(double x, double y) const {
  const Raw r = corner_raw(*this, x, y);
  if (!r.ok) fail(ErrorCode::BranchError, "outside the chart domain");
  return r.value;
}

Vec2 CornerMap::inverse(double X, double Y) const {
  // Start from the linearization at the corner, then Newton.
  Raw r = corner_raw(*this, corner.x, corner.y);
  if (!r.ok) fail(ErrorCode::InversionDiverged, "corner outside the chart domain");
  Vec2 p = corner;
  const double scale = 1.0 + std::abs(X) + std::abs(Y);
  for (int it = 0; it < 60; ++it) {
    if (it > 0) {
      r = corner_raw(*this, p.x, p.y);
      if (!r.ok) fail(ErrorCode::InversionDiverged, "Newton left the chart domain");
    }
    const double ex = r.value.x - X;
    const double ey = r.value.y - Y;
    if (std::hypot(ex, ey) <= 4.0 * kEps * scale && it > 0) return p;
    const double det = r.jac[0] * r.jac[3] - r.jac[1] * r.jac[2];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
      fail(ErrorCode::InversionDiverged, "singular Jacobian");
    }
    const Vec2 d{(r.jac[3] * ex - r.jac[1] * ey) / det, (-r.jac[2] * ex + r.jac[0] * ey) / det};
    p = {p.x - d.x, p.y - d.y};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      fail(ErrorCode::InversionDiverged, "Newton produced a non-finite point");
    }
    if (norm2(d) <= 1e-16 * (1.0 + norm2(p))) {
      const Raw last = corner_raw(*this, p.x, p.y);
      if (last.ok && std::hypot(last.value.x - X, last.value.y - Y) <= 64.0 * kEps * scale) return p;
    }
  }
  fail(ErrorCode::InversionDiverged, "Newton did not converge");
}

namespace {

// Solve p_i = p_j = 0 near seed.
std::optional<Vec2> intersect(const DarbouxSystem& sys, int i, int j, Vec2 p) {
  for (int it = 0; it < 100; ++it) {
    const double a = sys.p(i, p.x, p.y);
    const double b = sys.p(j, p.x, p.y);
    const Vec2 ga = sys.grad(i, p.x, p.y);
    const Vec2 gb = sys.grad(j, p.x, p.y);
    const double det = ga.x * gb.y - ga.y * gb.x;
    if (!(std::abs(det) > 0.0)) return std::nullopt;
    const Vec2 d{(gb.y * a - ga.y * b) / det, (-gb.x * a + ga.x * b) / det};
    p = {p.x - d.x, p.y - d.y};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
    if (norm2(d) <= 1e-15 * (1.0 + norm2(p))) return p;
  }
  const double res = std::hypot(sys.p(i, p.x, p.y), sys.p(j, p.x, p.y));
  if (res <= 1e-12) return p;
  return std::nullopt;
}

Vec2 corner_seed(const DarbouxSystem& sys, int i, int j, int grid) {
  const Box& b = sys.box();
  Vec2 best{0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)};
  double bv = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= grid; ++a) {
    for (int c = 0; c <= grid; ++c) {
      const Vec2 p{b.xmin + (b.xmax - b.xmin) * a / grid, b.ymin + (b.ymax - b.ymin) * c / grid};
      const double v = std::hypot(sys.p(i, p.x, p.y), sys.p(j, p.x, p.y));
      if (v < bv) {
        bv = v;
        best = p;
      }
    }
  }
  return best;
}

}  // namespace

CornerMap linearize_corner(const DarbouxSystem& sys, int i, int j, int order,
                           const CornerOptions& opts) {
  const int n = static_cast<int>(sys.size());
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    fail(ErrorCode::Domain, "invalid corner index pair");
  }
  if (order < 1) fail(ErrorCode::Domain, "order must be at least 1");
  if (!(opts.normalization > 0.0)) fail(ErrorCode::Domain, "normalization must be positive");
  if (!(opts.box > 0.0) || opts.grid < 1) fail(ErrorCode::Domain, "invalid certification box");

  CornerMap m;
  m.sys = std::make_shared<const DarbouxSystem>(sys);
  m.i = i;
  m.j = j;
  m.order = order;
  m.lambda = sys.exponents()[i];
  m.mu = sys.exponents()[j];
  m.normalization = opts.normalization;

  const Vec2 seed = opts.seed.value_or(corner_seed(sys, i, j, 4 * opts.grid));
  const auto c = intersect(sys, i, j, seed);
  if (!c) fail(ErrorCode::TransversalityFailure, "curves do not cross transversally near the seed");
  m.corner = *c;
  const Vec2 gi = sys.grad(i, c->x, c->y);
  const Vec2 gj = sys.grad(j, c->x, c->y);
  m.transversality = std::abs(gi.x * gj.y - gi.y * gj.x) / (norm2(gi) * norm2(gj));
  if (!(m.transversality >= opts.transversality_tol)) {
    fail(ErrorCode::TransversalityFailure, "gradients nearly parallel at the corner");
  }
  for (int k = 0; k < n; ++k) {
    if (k != i && k != j && !(sys.p(k, c->x, c->y) > 0.0)) {
      fail(ErrorCode::TransversalityFailure, "a third curve passes through the corner");
    }
  }

  const double logC = std::log(m.normalization);
  double box = opts.box;
  for (int attempt = 0; attempt <= 30; ++attempt, box *= 0.5) {
    double worst = 0.0;
    bool ok = true;
    for (int a = 1; a <= opts.grid && ok; ++a) {
      for (int b = 1; b <= opts.grid && ok; ++b) {
        const double X = box * a / opts.grid;
        const double Y = box * b / opts.grid;
        try {
          const Vec2 p = m.inverse(X, Y);
          if (!(sys.min_p(p.x, p.y) > 0.0)) {
            ok = false;
            break;
          }
          const double r = std::abs(std::expm1(sys.log_f(p.x, p.y) - logC -
                                               m.lambda * std::log(X) - m.mu * std::log(Y)));
          worst = std::max(worst, r);
          if (!(r <= opts.residual_tol)) ok = false;
        } catch (const Error&) {
          ok = false;
        }
      }
    }
    if (ok) {
      m.box = box;
      m.max_residual = worst;
      return m;
    }
  }
  fail(ErrorCode::InversionDiverged, "no box with a convergent inverse");
}

}  // namespace pseudoabel
