#include "pseudoabel/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pseudoabel {

bool AsymptoticTerm::vanishing() const {
  const double tol = 64.0 * kEps;
  return std::abs(c1) <= tol * mass1 && std::abs(c2) <= tol * mass2;
}

namespace {

struct Piece {
  double alpha;
  Complex c1;
  Complex c2;
};

std::vector<Piece> pieces(const JSeries& s) {
  std::vector<Piece> out;
  for (const auto& t : s.b) out.push_back({s.exponent(t.r, t.i), t.coef, 0.0});
  for (const auto& t : s.a) {
    const double x = s.exponent(t.p, t.i);
    const double y = s.exponent(t.q, t.j);
    if (std::abs(x - y) <= kTolPole) {
      out.push_back({std::min(x, y), 0.0, t.coef});
    } else {
      out.push_back({x, t.coef / (x - y), 0.0});
      out.push_back({y, t.coef / (y - x), 0.0});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Piece& l, const Piece& r) { return l.alpha < r.alpha; });
  return out;
}

}  // namespace

std::vector<AsymptoticTerm> asymptotic_expansion(const JSeries& s) {
  std::vector<AsymptoticTerm> out;
  for (const Piece& p : pieces(s)) {
    if (out.empty() || p.alpha - out.back().alpha > kTolPole) {
      out.push_back({p.alpha, 0.0, 0.0, 0.0, 0.0});
    }
    auto& t = out.back();
    t.c1 += p.c1;
    t.c2 += p.c2;
    t.mass1 += std::abs(p.c1);
    t.mass2 += std::abs(p.c2);
  }
  return out;
}

std::pair<Complex, Complex> asymptotic_coeffs(const JSeries& s, double alpha) {
  Complex c1 = 0.0;
  Complex c2 = 0.0;
  for (const Piece& p : pieces(s)) {
    if (std::abs(p.alpha - alpha) <= kTolPole) {
      c1 += p.c1;
      c2 += p.c2;
    }
  }
  return {c1, c2};
}

std::optional<AsymptoticTerm> leading_term(const JSeries& s) {
  for (const auto& t : asymptotic_expansion(s)) {
    if (!t.vanishing()) return t;
  }
  return std::nullopt;
}

Complex PartialSum::evaluate(double t) const {
  const double L = std::log(t);
  Complex sum = 0.0;
  for (const auto& term : terms) {
    sum += (term.c1 + term.c2 * L) * std::exp(term.alpha * L);
  }
  return sum;
}

double PartialSum::envelope(double t) const {
  const double L = std::log(t);
  const double aL = std::abs(L);
  double sum = 0.0;
  for (const auto& e : envelope_terms) {
    sum += e.weight * std::exp(e.beta * L) * std::pow(aL, e.log_power);
  }
  return sum;
}

double admissible_cut(const JSeries& s, double cutoff) {
  const std::size_t n = s.spectrum.size();
  if (n == 0) return cutoff;
  const double lmax = s.spectrum.max();
  const double lmin = s.spectrum.min();
  const double d = 1.0 / (2.0 * (2.0 * n + 1.0) * lmax);
  const double span = 2.0 / lmin + 1.0;
  std::vector<double> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = s.spectrum[i];
    const long k0 = static_cast<long>(std::floor((cutoff - span) * lam));
    const long k1 = static_cast<long>(std::ceil((cutoff + span) * lam));
    for (long k = k0; k <= k1; ++k) pts.push_back(k / lam);
  }
  std::sort(pts.begin(), pts.end());
  const auto ok = [&](double c) {
    for (double p : pts) {
      if (std::abs(c - p) < d * (1.0 - 1e-12)) return false;
    }
    return true;
  };
  if (ok(cutoff)) return cutoff;
  std::vector<double> cand;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    cand.push_back(pts[k] - d);
    cand.push_back(pts[k] + d);
    if (k + 1 < pts.size()) cand.push_back(0.5 * (pts[k] + pts[k + 1]));
  }
  double best = cutoff;
  double best_dist = std::numeric_limits<double>::infinity();
  for (double c : cand) {
    if (ok(c) && std::abs(c - cutoff) < best_dist) {
      best = c;
      best_dist = std::abs(c - cutoff);
    }
  }
  return best;
}

PartialSum partial_sum_at(const JSeries& s, double cut) {
  PartialSum ps;
  ps.requested = cut;
  ps.cut = cut;
  for (const auto& t : asymptotic_expansion(s)) {
    if (t.alpha < cut) ps.terms.push_back(t);
  }
  auto& env = ps.envelope_terms;
  for (const auto& t : s.b) {
    const double x = s.exponent(t.r, t.i);
    if (x >= cut) env.push_back({std::abs(t.coef), x, 0});
  }
  for (const auto& t : s.a) {
    const double x = s.exponent(t.p, t.i);
    const double y = s.exponent(t.q, t.j);
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    const double w = std::abs(t.coef);
    if (lo >= cut) {
      // |l| <= r^lo |log r| for r <= 1.
      env.push_back({w, lo, 1});
    } else if (hi - lo <= kTolPole) {
      // Kept as t^lo log t; |phi(z) - 1| <= |z| e^{|z|} / 2.
      if (hi > lo) env.push_back({0.5 * w * (hi - lo), lo - (hi - lo), 2});
    } else if (hi >= cut) {
      env.push_back({w / (hi - lo), hi, 0});
    }
  }
  if (s.tail) {
    const TailModel& tm = *s.tail;
    const double n = static_cast<double>(s.spectrum.size());
    const double lmin = s.spectrum.min();
    const double lmax = s.spectrum.max();
    const double g_lo = (1 - tm.m) <= 0 ? (1 - tm.m) / lmin : (1 - tm.m) / lmax;
    double wa = 0.0;
    double wb = 0.0;
    for (int k = tm.order + 1; k < tm.order + 20000; ++k) {
      const double rk = std::pow(tm.rho, -k);
      wa += std::max(0, k + 2 * tm.m - 1) * rk;
      wb += rk;
      if (rk * (k + 2 * tm.m + 1) < 1e-20 * wa) break;
    }
    wa *= tm.C * n * n;
    wb *= tm.C * n;
    const double beta_b = (tm.order + 1) / lmax;
    for (const auto& sh : tm.shifts) {
      env.push_back({sh.weight * wa, g_lo, 1});
      if (sh.angle != 0.0) {
        env.push_back({sh.weight * wa * std::abs(sh.angle), g_lo, 0});
      }
      env.push_back({sh.weight * wb, beta_b, 0});
    }
  }
  return ps;
}

PartialSum asymptotic_partial_sum(const JSeries& s, double cutoff) {
  PartialSum ps = partial_sum_at(s, admissible_cut(s, cutoff));
  ps.requested = cutoff;
  return ps;
}

}  // namespace pseudoabel
