#include <cmath>
#include <map>
#include <tuple>

#include "pseudoabel/mellin.hpp"

namespace pseudoabel {

namespace {

Complex sinc(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

std::vector<TailShift> merge_shifts(std::vector<TailShift> in) {
  std::map<double, double> by_angle;
  for (const auto& s : in) by_angle[s.angle] += s.weight;
  std::vector<TailShift> out;
  for (const auto& [angle, w] : by_angle) {
    if (!out.empty() && std::abs(angle - out.back().angle) <= 1e-14 * (1 + std::abs(angle))) {
      out.back().weight += w;
    } else {
      out.push_back({w, angle});
    }
  }
  return out;
}

}  // namespace

Kernel kernel_identity() {
  Kernel k;
  k.value = [](Complex) { return Complex(1.0); };
  k.deriv = [](Complex) { return Complex(0.0); };
  k.div_diff = [](Complex, Complex) { return Complex(0.0); };
  k.value_bound = 1.0;
  k.deriv_bound = 0.0;
  k.rotations = std::vector<TailShift>{{1.0, 0.0}};
  k.exact_zero = [](double) { return false; };
  return k;
}

Kernel kernel_exp(double kappa) {
  const Complex c(0.0, -kappa);
  Kernel k;
  k.value = [c](Complex s) { return std::exp(c * s); };
  k.deriv = [c](Complex s) { return c * std::exp(c * s); };
  k.div_diff = [c](Complex u, Complex v) {
    return std::exp(c * v) * c * phi_stable(c * (u - v));
  };
  k.value_bound = 1.0;
  k.deriv_bound = std::abs(kappa);
  k.rotations = std::vector<TailShift>{{1.0, kappa}};
  k.exact_zero = [](double) { return false; };
  return k;
}

Kernel kernel_sin(double kappa) {
  Kernel k;
  k.value = [kappa](Complex s) { return std::sin(kappa * s); };
  k.deriv = [kappa](Complex s) { return kappa * std::cos(kappa * s); };
  // sin u - sin v = 2 cos((u+v)/2) sin((u-v)/2).
  k.div_diff = [kappa](Complex u, Complex v) {
    return kappa * std::cos(0.5 * kappa * (u + v)) * sinc(0.5 * kappa * (u - v));
  };
  k.value_bound = 1.0;
  k.deriv_bound = std::abs(kappa);
  k.rotations = std::vector<TailShift>{{0.5, -kappa}, {0.5, kappa}};
  k.exact_zero = [kappa](double s) {
    if (kappa == 0.0) return true;
    const double u = kappa * s / kPi;
    return std::abs(u - std::nearbyint(u)) <= 16.0 * kEps * (1.0 + std::abs(u));
  };
  return k;
}

Kernel kernel_product(const Kernel& k1, const Kernel& k2) {
  Kernel k;
  k.value = [k1, k2](Complex s) { return k1.value(s) * k2.value(s); };
  k.deriv = [k1, k2](Complex s) {
    return k1.deriv(s) * k2.value(s) + k1.value(s) * k2.deriv(s);
  };
  k.div_diff = [k1, k2](Complex u, Complex v) {
    return k1.value(u) * k2.div_diff(u, v) + k1.div_diff(u, v) * k2.value(v);
  };
  k.value_bound = k1.value_bound * k2.value_bound;
  k.deriv_bound = k1.deriv_bound * k2.value_bound + k1.value_bound * k2.deriv_bound;
  if (k1.rotations && k2.rotations) {
    std::vector<TailShift> conv;
    for (const auto& a : *k1.rotations) {
      for (const auto& b : *k2.rotations) {
        conv.push_back({a.weight * b.weight, a.angle + b.angle});
      }
    }
    k.rotations = merge_shifts(std::move(conv));
  }
  k.exact_zero = [k1, k2](double s) {
    return (k1.exact_zero && k1.exact_zero(s)) || (k2.exact_zero && k2.exact_zero(s));
  };
  return k;
}

MellinRep apply_kernel(const MellinRep& g, const Kernel& K,
                       const KernelOptions& opts, KernelStats* stats) {
  std::map<std::tuple<int, int, int, int>, Complex> dm;
  std::map<std::pair<int, int>, Complex> sm;
  KernelStats local;
  const auto is_zero = [&](double x) {
    if (!opts.snap_zeros || !K.exact_zero || !K.exact_zero(-x)) return false;
    ++local.snapped;
    local.max_snapped = std::max(local.max_snapped, std::abs(K.value(-x)));
    return true;
  };
  const auto add_simple = [&](int r, int i, Complex c) {
    if (c != 0.0) sm[{r, i}] += c;
  };

  for (const auto& t : g.simples) {
    const double x = g.exponent(t.r, t.i);
    if (is_zero(x)) continue;
    add_simple(t.r, t.i, K.value(-x) * t.coef);
  }
  for (const auto& d : g.doubles) {
    const double x = g.exponent(d.p, d.i);
    const double y = g.exponent(d.q, d.j);
    const bool zx = is_zero(x);
    const bool zy = is_zero(y);
    if (!zx && !zy) {
      const Complex mean = 0.5 * (K.value(-x) + K.value(-y));
      if (mean * d.coef != 0.0) dm[{d.p, d.q, d.i, d.j}] += mean * d.coef;
      const Complex half = 0.5 * K.div_diff(-x, -y) * d.coef;
      add_simple(d.p, d.i, half);
      add_simple(d.q, d.j, half);
    } else if (zx && !zy) {
      add_simple(d.q, d.j, K.div_diff(-x, -y) * d.coef);
    } else if (zy && !zx) {
      add_simple(d.p, d.i, K.div_diff(-x, -y) * d.coef);
    } else if (std::abs(x - y) <= kTolPole) {
      // Double pole on a simple zero of K leaves K'(-x) c / (s + x).
      const Complex c = K.deriv(-x) * d.coef;
      if (opts.target && d.i == *opts.target && d.j != *opts.target) {
        add_simple(d.q, d.j, c);
      } else {
        add_simple(d.p, d.i, c);
      }
    }
  }

  MellinRep out;
  out.spectrum = g.spectrum;
  out.m = g.m;
  out.rho = g.rho;
  out.order = g.order;
  for (const auto& [k, c] : dm) {
    out.doubles.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k),
                           std::get<3>(k), c});
  }
  for (const auto& [k, c] : sm) out.simples.push_back({k.first, k.second, c});

  const double n = static_cast<double>(g.spectrum.size());
  const double S = std::pow(g.rho, g.m) / (g.rho - 1.0);
  out.C = g.C * (K.value_bound + K.deriv_bound * n * S);
  for (const auto& d : out.doubles) {
    out.C = std::max(out.C, std::abs(d.coef) * std::pow(out.rho, d.p + d.q));
  }
  for (const auto& s : out.simples) {
    out.C = std::max(out.C, std::abs(s.coef) * std::pow(out.rho, s.r));
  }
  if (!std::isfinite(out.C) || !(out.C > 0.0)) {
    if (out.empty() && out.C == 0.0) {
      out.C = g.C;
    } else {
      fail(ErrorCode::CertificateLoss, "kernel lost the decay certificate");
    }
  }
  if (g.tail) {
    if (!K.rotations) {
      fail(ErrorCode::CertificateLoss,
           "kernel is not a combination of rotations; tail bound lost");
    }
    TailModel tm = *g.tail;
    std::vector<TailShift> shifts;
    for (const auto& s : g.tail->shifts) {
      for (const auto& r : *K.rotations) {
        shifts.push_back({s.weight * r.weight, s.angle + r.angle});
      }
    }
    tm.shifts = merge_shifts(std::move(shifts));
    out.tail = std::move(tm);
  }
  if (stats) *stats = local;
  return out;
}

JSeries petrov_series(const JSeries& sigma, double kappa,
                      const KernelOptions& opts, KernelStats* stats) {
  return mellin_to_series(
      apply_kernel(mellin_forward(sigma), kernel_sin(kappa), opts, stats));
}

}  // namespace pseudoabel
