#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "pseudoabel/jseries.hpp"

namespace pseudoabel {

Spectrum::Spectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    if (!(lambdas_[i] > 0.0) || !std::isfinite(lambdas_[i])) {
      fail(ErrorCode::InvalidSeries, "spectrum entries must be positive");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double scale = std::max(lambdas_[i], lambdas_[j]);
      if (std::abs(lambdas_[i] - lambdas_[j]) <= kTolSpec * scale) {
        fail(ErrorCode::InvalidSeries, "spectrum entries must be distinct");
      }
    }
  }
}

double Spectrum::min() const {
  return *std::min_element(lambdas_.begin(), lambdas_.end());
}

double Spectrum::max() const {
  return *std::max_element(lambdas_.begin(), lambdas_.end());
}

double JSeries::lower_exponent() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& t : a) {
    lo = std::min({lo, exponent(t.p, t.i), exponent(t.q, t.j)});
  }
  for (const auto& t : b) lo = std::min(lo, exponent(t.r, t.i));
  return std::isfinite(lo) ? lo : 0.0;
}

double JSeries::max_coef() const {
  double mx = 0.0;
  for (const auto& t : a) mx = std::max(mx, std::abs(t.coef));
  for (const auto& t : b) mx = std::max(mx, std::abs(t.coef));
  return mx;
}

bool JSeries::is_real(double rel_tol) const {
  for (const auto& t : a) {
    if (std::abs(t.coef.imag()) > rel_tol * std::abs(t.coef)) return false;
  }
  for (const auto& t : b) {
    if (std::abs(t.coef.imag()) > rel_tol * std::abs(t.coef)) return false;
  }
  return true;
}

JSeries make_series(Spectrum spectrum, int m, double C, double rho, int order,
                    bool exact) {
  JSeries s;
  s.spectrum = std::move(spectrum);
  s.m = m;
  s.C = C;
  s.rho = rho;
  s.order = order;
  if (!exact) s.tail = TailModel{C, rho, m, order, {TailShift{}}};
  return s;
}

void canonicalize(JSeries& sigma) {
  std::map<std::tuple<int, int, int, int>, Complex> am;
  for (const auto& t : sigma.a) am[{t.p, t.q, t.i, t.j}] += t.coef;
  std::map<std::pair<int, int>, Complex> bm;
  for (const auto& t : sigma.b) bm[{t.r, t.i}] += t.coef;
  sigma.a.clear();
  sigma.b.clear();
  for (const auto& [k, c] : am) {
    sigma.a.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k),
                       std::get<3>(k), c});
  }
  for (const auto& [k, c] : bm) sigma.b.push_back({k.first, k.second, c});
}

namespace {

std::string term_label(const ATerm& t) {
  std::ostringstream os;
  os << "a(" << t.p << "," << t.q << "," << t.i << "," << t.j << ")";
  return os.str();
}

std::string term_label(const BTerm& t) {
  std::ostringstream os;
  os << "b(" << t.r << "," << t.i << ")";
  return os.str();
}

}  // namespace

void validate(const JSeries& s) {
  const auto bad = [](const std::string& msg) {
    fail(ErrorCode::InvalidSeries, msg);
  };
  if (s.spectrum.empty() && !s.empty()) bad("terms need a nonempty spectrum");
  if (s.m < 0) bad("m must be nonnegative");
  if (!(s.C > 0.0) || !std::isfinite(s.C)) bad("C must be positive");
  if (!(s.rho > 2.0) || !std::isfinite(s.rho)) bad("rho must exceed 2");
  if (s.order < 1 - s.m) bad("truncation order below the index range");
  const int n = static_cast<int>(s.spectrum.size());
  const int lo = 1 - s.m;
  const double slack = 1.0 + 1e-12;
  for (const auto& t : s.a) {
    if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n) {
      bad(term_label(t) + ": spectrum index out of range");
    }
    if (t.p < lo || t.q < lo) bad(term_label(t) + ": index below 1-m");
    if (t.p + t.q > s.order) bad(term_label(t) + ": beyond truncation order");
    if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag())) {
      bad(term_label(t) + ": non-finite coefficient");
    }
    if (std::abs(t.coef) > slack * s.C * std::pow(s.rho, -(t.p + t.q))) {
      bad(term_label(t) + ": coefficient exceeds C rho^-(p+q)");
    }
  }
  for (const auto& t : s.b) {
    if (t.i < 0 || t.i >= n) bad(term_label(t) + ": spectrum index out of range");
    if (t.r < lo) bad(term_label(t) + ": index below 1-m");
    if (t.r > s.order) bad(term_label(t) + ": beyond truncation order");
    if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag())) {
      bad(term_label(t) + ": non-finite coefficient");
    }
    if (std::abs(t.coef) > slack * s.C * std::pow(s.rho, -t.r)) {
      bad(term_label(t) + ": coefficient exceeds C rho^-r");
    }
  }
  if (s.tail) {
    if (!(s.tail->C > 0.0) || !(s.tail->rho > 2.0)) bad("invalid tail model");
    for (const auto& sh : s.tail->shifts) {
      if (!(sh.weight >= 0.0) || !std::isfinite(sh.angle)) {
        bad("invalid tail shift");
      }
    }
  }
}

double fitted_constant(const JSeries& s) {
  double c = s.C;
  for (const auto& t : s.a) {
    c = std::max(c, std::abs(t.coef) * std::pow(s.rho, t.p + t.q));
  }
  for (const auto& t : s.b) c = std::max(c, std::abs(t.coef) * std::pow(s.rho, t.r));
  return c;
}

bool sector_certified(const JSeries& s, SectorPoint point) {
  if (!(point.modulus > 0.0)) return false;
  if (s.spectrum.empty()) return true;
  const double eps = std::max(0.0, std::log(point.modulus));
  const double inv = 1.0 / s.spectrum.min();
  return eps * (std::abs(point.argument) + inv) < std::log(s.rho) - std::log(2.0);
}

namespace {

// Sum over k > order of the a- and b-weights at modulus r.
struct TailSums {
  double a = 0.0;
  double b = 0.0;
};

TailSums tail_sums(const TailModel& tm, const Spectrum& sp, double r) {
  const double lmin = sp.min();
  const double lmax = sp.max();
  const int m = tm.m;
  const double g_lo = (1 - m) <= 0 ? (1 - m) / lmin : (1 - m) / lmax;
  const double lr = std::log(r);
  TailSums out;
  for (int k = tm.order + 1; k < tm.order + 20000; ++k) {
    const double lrho = -k * std::log(tm.rho);
    const double g_hi = (k + m - 1) / lmin;
    const double ga = r <= 1.0 ? g_lo : g_hi;
    const double count = std::max(0, k + 2 * m - 1);
    const double ta = count * std::exp(lrho + ga * lr);
    double tb = 0.0;
    if (k != 0) {
      const double e1 = k / lmax;
      const double e2 = k / lmin;
      tb = std::exp(lrho + std::max(e1 * lr, e2 * lr));
    } else {
      tb = std::exp(lrho);
    }
    out.a += ta;
    out.b += tb;
    if (k > tm.order + 8 && ta <= 1e-18 * out.a && tb <= 1e-18 * out.b) {
      return out;
    }
    if (!std::isfinite(out.a) || !std::isfinite(out.b)) break;
  }
  out.a = out.b = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

double tail_bound(const JSeries& s, SectorPoint point) {
  if (!s.tail) return 0.0;
  const TailModel& tm = *s.tail;
  const double n = static_cast<double>(s.spectrum.size());
  const TailSums sums = tail_sums(tm, s.spectrum, point.modulus);
  const double lr = std::log(point.modulus);
  double total = 0.0;
  for (const auto& sh : tm.shifts) {
    const double absL = std::hypot(lr, point.argument + sh.angle);
    total += sh.weight * tm.C * (n * n * absL * sums.a + n * sums.b);
  }
  return total;
}

EvalResult jseries_eval(const JSeries& s, SectorPoint point) {
  if (!(point.modulus > 0.0)) fail(ErrorCode::Domain, "modulus must be positive");
  if (!sector_certified(s, point)) {
    fail(ErrorCode::SectorOutOfRange, "point outside the certified sector");
  }
  const Complex L = point.log();
  const double absL = std::abs(L);
  Complex sum = 0.0;
  double rounding = 0.0;
  for (const auto& t : s.a) {
    const double x = s.exponent(t.p, t.i);
    const double y = s.exponent(t.q, t.j);
    const Complex v = t.coef * compensator(x, y, L);
    sum += v;
    rounding += std::abs(v) * (4.0 + std::max(std::abs(x), std::abs(y)) * absL);
  }
  for (const auto& t : s.b) {
    const double x = s.exponent(t.r, t.i);
    const Complex v = t.coef * std::exp(x * L);
    sum += v;
    rounding += std::abs(v) * (2.0 + std::abs(x) * absL);
  }
  EvalResult res;
  res.value = sum;
  res.rounding = 16.0 * kEps * rounding;
  res.tail_bound = tail_bound(s, point);
  return res;
}

Complex jseries_value(const JSeries& s, SectorPoint point) {
  return jseries_eval(s, point).value;
}

Complex jseries_derivative(const JSeries& s, double t) {
  if (!(t > 0.0)) fail(ErrorCode::Domain, "derivative needs t > 0");
  if (!sector_certified(s, real_point(t))) {
    fail(ErrorCode::SectorOutOfRange, "point outside the certified sector");
  }
  const double L = std::log(t);
  Complex sum = 0.0;
  for (const auto& a : s.a) {
    sum += a.coef * compensator_derivative(s.exponent(a.p, a.i),
                                           s.exponent(a.q, a.j), t);
  }
  for (const auto& b : s.b) {
    const double x = s.exponent(b.r, b.i);
    sum += b.coef * (x * std::exp((x - 1.0) * L));
  }
  return sum;
}

JSeries rotate_series(const JSeries& s, double kappa) {
  if (!std::isfinite(kappa)) fail(ErrorCode::Domain, "kappa must be finite");
  JSeries out = s;
  out.a.clear();
  out.b.clear();
  if (kappa == 0.0) return s;
  const Complex ik(0.0, kappa);
  std::map<std::pair<int, int>, Complex> extra;
  for (const auto& t : s.a) {
    const double x = s.exponent(t.p, t.i);
    const double y = s.exponent(t.q, t.j);
    const Complex ex = std::exp(ik * x);
    const Complex ey = std::exp(ik * y);
    out.a.push_back({t.p, t.q, t.i, t.j, 0.5 * (ex + ey) * t.coef});
    const Complex half_d = 0.5 * exp_divided_difference(ik, x, y) * t.coef;
    extra[{t.p, t.i}] += half_d;
    extra[{t.q, t.j}] += half_d;
  }
  for (const auto& t : s.b) {
    out.b.push_back({t.r, t.i, std::exp(ik * s.exponent(t.r, t.i)) * t.coef});
  }
  for (const auto& [k, c] : extra) out.b.push_back({k.first, k.second, c});
  canonicalize(out);

  const double n = static_cast<double>(s.spectrum.size());
  const double S = std::pow(s.rho, s.m) / (s.rho - 1.0);
  out.C = s.C * (1.0 + std::abs(kappa) * n * S);
  out.C = fitted_constant(out);
  if (!std::isfinite(out.C) || !(out.rho > 2.0)) {
    fail(ErrorCode::CertificateLoss, "rotation lost the decay certificate");
  }
  if (out.tail) {
    for (auto& sh : out.tail->shifts) sh.angle += kappa;
  }
  return out;
}

}  // namespace pseudoabel
