#include "pseudoabel/mellin.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace pseudoabel {

double MellinRep::lower_exponent() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& d : doubles) {
    lo = std::min({lo, exponent(d.p, d.i), exponent(d.q, d.j)});
  }
  for (const auto& s : simples) lo = std::min(lo, exponent(s.r, s.i));
  return std::isfinite(lo) ? lo : 0.0;
}

MellinRep mellin_forward(const JSeries& sigma) {
  MellinRep g;
  g.spectrum = sigma.spectrum;
  g.m = sigma.m;
  g.C = sigma.C;
  g.rho = sigma.rho;
  g.order = sigma.order;
  g.tail = sigma.tail;
  g.doubles.reserve(sigma.a.size());
  for (const auto& t : sigma.a) g.doubles.push_back({t.p, t.q, t.i, t.j, -t.coef});
  g.simples.reserve(sigma.b.size());
  for (const auto& t : sigma.b) g.simples.push_back({t.r, t.i, t.coef});
  return g;
}

JSeries mellin_to_series(const MellinRep& g) {
  JSeries s;
  s.spectrum = g.spectrum;
  s.m = g.m;
  s.C = g.C;
  s.rho = g.rho;
  s.order = g.order;
  s.tail = g.tail;
  s.a.reserve(g.doubles.size());
  for (const auto& d : g.doubles) s.a.push_back({d.p, d.q, d.i, d.j, -d.coef});
  s.b.reserve(g.simples.size());
  for (const auto& t : g.simples) s.b.push_back({t.r, t.i, t.coef});
  return s;
}

Complex mellin_eval_at(const MellinRep& g, Complex s) {
  const auto near = [&](double x) {
    if (std::abs(s + x) <= 1e-9) {
      fail(ErrorCode::NearPole, "evaluation point within 1e-9 of a pole");
    }
  };
  Complex sum = 0.0;
  for (const auto& d : g.doubles) {
    const double x = g.exponent(d.p, d.i);
    const double y = g.exponent(d.q, d.j);
    near(x);
    near(y);
    sum += d.coef / ((s + x) * (s + y));
  }
  for (const auto& t : g.simples) {
    const double x = g.exponent(t.r, t.i);
    near(x);
    sum += t.coef / (s + x);
  }
  return sum;
}

std::vector<PrincipalPart> principal_parts(const MellinRep& g, double tol) {
  std::vector<PrincipalPart> raw;
  for (const auto& t : g.simples) raw.push_back({-g.exponent(t.r, t.i), 0.0, t.coef});
  for (const auto& d : g.doubles) {
    const double x = g.exponent(d.p, d.i);
    const double y = g.exponent(d.q, d.j);
    if (std::abs(x - y) <= tol) {
      raw.push_back({-std::min(x, y), d.coef, 0.0});
    } else {
      raw.push_back({-x, 0.0, d.coef / (y - x)});
      raw.push_back({-y, 0.0, d.coef / (x - y)});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const auto& l, const auto& r) {
    return l.location < r.location;
  });
  std::vector<PrincipalPart> out;
  for (const auto& p : raw) {
    if (out.empty() || p.location - out.back().location > tol) {
      out.push_back({p.location, 0.0, 0.0});
    }
    out.back().c2 += p.c2;
    out.back().c1 += p.c1;
  }
  return out;
}

namespace {

template <class F>
QuadResult gk_panel(F&& f, double a, double b) {
  double err = 0.0;
  double l1 = 0.0;
  const Complex v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 12, 1e-13, &err, &l1);
  return {v, err};
}

}  // namespace

QuadResult mellin_numeric(const std::function<Complex(double)>& f,
                          double lowest_exponent, Complex s, double quad_tol) {
  const double decay = s.real() + lowest_exponent;
  if (!(decay > 0.1)) {
    fail(ErrorCode::DivergentIntegral,
         "Re s must exceed -(lowest exponent) + 0.1");
  }
  if (!(quad_tol > 0.0)) fail(ErrorCode::Domain, "quad_tol must be positive");
  // t = e^{-u}: int_0^inf e^{-u s} f(e^{-u}) du.
  const auto integrand = [&](double u) -> Complex {
    return std::exp(-u * s) * f(std::exp(-u));
  };
  QuadResult total{0.0, 0.0};
  double a = 0.0;
  double b = 0.5;
  const double u_end = std::min(700.0, 45.0 / decay);
  while (a < u_end) {
    const QuadResult q = gk_panel(integrand, a, b);
    total.value += q.value;
    total.error += q.error;
    a = b;
    b = std::min(2.0 * b, std::max(u_end, a + 1e-9));
  }
  // |integrand| <~ e^{-u decay} (1 + u) beyond the last panel.
  const double scale = std::abs(f(std::exp(-1.0))) * std::exp(lowest_exponent);
  total.error += scale * (1.0 + u_end) * std::exp(-u_end * decay) / decay;
  return total;
}

ContourSpec default_contour(const MellinRep& g, double quad_tol) {
  ContourSpec c;
  c.M = g.lower_exponent();
  c.quad_tol = quad_tol;
  return c;
}

QuadResult inverse_mellin(const MellinRep& g, double t,
                          const ContourSpec& contour) {
  if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::ContourInvalid, "t must lie in (0,1)");
  if (!(contour.quad_tol > 0.0)) {
    fail(ErrorCode::ContourInvalid, "quad_tol must be positive");
  }
  const double c = -contour.M + 1.0;
  const auto check = [&](double x) {
    if (-x > c - 0.5) {
      fail(ErrorCode::ContourInvalid, "pole too close to or right of Re s = -M+1");
    }
  };
  for (const auto& d : g.doubles) {
    check(g.exponent(d.p, d.i));
    check(g.exponent(d.q, d.j));
  }
  for (const auto& s : g.simples) check(g.exponent(s.r, s.i));
  if (g.empty()) return {0.0, 0.0};

  const double lt = -std::log(t);
  const double R = contour.T > 0.0 ? contour.T : 1.0 + 40.0 / lt;
  const auto h = [&](Complex s) { return std::exp(s * lt) * mellin_eval_at(g, s); };
  const Complex I(0.0, 1.0);

  QuadResult total{0.0, 0.0};
  const QuadResult edge =
      gk_panel([&](double y) { return h(Complex(c, y)) * I; }, -1.0, 1.0);
  total.value += edge.value;
  total.error += edge.error;
  const auto ray = [&](double x) { return h(Complex(x, -1.0)) - h(Complex(x, 1.0)); };
  const int panels = std::max(1, static_cast<int>(std::ceil(R / 2.0)));
  for (int k = 0; k < panels; ++k) {
    const double a = c - R + k * (R / panels);
    const double b = c - R + (k + 1) * (R / panels);
    const QuadResult q = gk_panel(ray, a, b);
    total.value += q.value;
    total.error += q.error;
  }
  double gmax = 0.0;
  for (const auto& d : g.doubles) gmax += std::abs(d.coef);
  for (const auto& s : g.simples) gmax += std::abs(s.coef);
  total.error += 2.0 * gmax * std::exp((c - R) * lt) / lt;

  const double norm = 1.0 / (2.0 * kPi);
  total.value = total.value / (2.0 * kPi * I);
  total.error *= norm;
  return total;
}

}  // namespace pseudoabel
