#include "oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_50;
using Cplx = mp::cpp_complex_50;

namespace {

Complex down(const Cplx& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

Cplx log_point(double modulus, double argument) {
  return Cplx(mp::log(Real(modulus)), Real(argument));
}

Cplx ell_mp(int p, int q, double lambda, double mu, const Cplx& L) {
  const Real x = Real(p) / Real(lambda);
  const Real y = Real(q) / Real(mu);
  if (x == y) return mp::exp(x * L) * L;
  return (mp::exp(x * L) - mp::exp(y * L)) / (x - y);
}

}  // namespace

Complex phi(Complex z) {
  const Cplx w(Real(z.real()), Real(z.imag()));
  if (w == Cplx(0)) return 1.0;
  return down((mp::exp(w) - Cplx(1)) / w);
}

Complex ell(int p, int q, double lambda, double mu, double modulus, double argument) {
  return down(ell_mp(p, q, lambda, mu, log_point(modulus, argument)));
}

Complex series(const pseudoabel::JSeries& s, double modulus, double argument) {
  const Cplx L = log_point(modulus, argument);
  Cplx sum(0);
  for (const auto& t : s.a) {
    sum += Cplx(Real(t.coef.real()), Real(t.coef.imag())) *
           ell_mp(t.p, t.q, s.spectrum[t.i], s.spectrum[t.j], L);
  }
  for (const auto& t : s.b) {
    sum += Cplx(Real(t.coef.real()), Real(t.coef.imag())) *
           mp::exp(Real(t.r) / Real(s.spectrum[t.i]) * L);
  }
  return down(sum);
}

Complex series_derivative(const pseudoabel::JSeries& s, double t) {
  const Real tt(t);
  const Real L = mp::log(tt);
  Cplx sum(0);
  for (const auto& term : s.a) {
    const Real x = Real(term.p) / Real(s.spectrum[term.i]);
    const Real y = Real(term.q) / Real(s.spectrum[term.j]);
    Real d;
    if (x == y) {
      d = mp::pow(tt, x - 1) * (x * L + 1);
    } else {
      d = (x * mp::pow(tt, x - 1) - y * mp::pow(tt, y - 1)) / (x - y);
    }
    sum += Cplx(Real(term.coef.real()), Real(term.coef.imag())) * d;
  }
  for (const auto& term : s.b) {
    const Real x = Real(term.r) / Real(s.spectrum[term.i]);
    sum += Cplx(Real(term.coef.real()), Real(term.coef.imag())) * x * mp::pow(tt, x - 1);
  }
  return down(sum);
}

Complex mellin(const pseudoabel::MellinRep& g, Complex s) {
  const Cplx w(Real(s.real()), Real(s.imag()));
  Cplx sum(0);
  for (const auto& d : g.doubles) {
    const Real x = Real(d.p) / Real(g.spectrum[d.i]);
    const Real y = Real(d.q) / Real(g.spectrum[d.j]);
    sum += Cplx(Real(d.coef.real()), Real(d.coef.imag())) / ((w + x) * (w + y));
  }
  for (const auto& m : g.simples) {
    const Real x = Real(m.r) / Real(g.spectrum[m.i]);
    sum += Cplx(Real(m.coef.real()), Real(m.coef.imag())) / (w + x);
  }
  return down(sum);
}

double triangle_area(double t) {
  // For fixed x the admissible y form an interval of length
  // sqrt((1-x)^2 - 4t/x); it is nonempty between the roots of x(1-x)^2 = 4t.
  const auto g = [t](double x) { return x * (1 - x) * (1 - x) - 4 * t; };
  boost::math::tools::eps_tolerance<double> tol(60);
  std::uintmax_t it = 200;
  const auto r1 = boost::math::tools::toms748_solve(g, 0.0, 1.0 / 3, -4 * t, g(1.0 / 3), tol, it);
  it = 200;
  const auto r2 = boost::math::tools::toms748_solve(g, 1.0 / 3, 1.0, g(1.0 / 3), -4 * t, tol, it);
  const double a = 0.5 * (r1.first + r1.second);
  const double b = 0.5 * (r2.first + r2.second);
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [t](double x) { return std::sqrt(std::max(0.0, (1 - x) * (1 - x) - 4 * t / x)); }, a, b);
}

double corner_quadrature(int p, int q, double lambda, double mu, double t) {
  const double L = std::log(t);
  // x = e^u, dx = e^u du.
  const auto f = [&](double u) { return std::exp(p * u + q * (L - lambda * u) / mu); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, L / lambda, 0.0, 15,
                                                                       1e-15);
}

Complex mellin_quadrature(const std::function<Complex(double)>& f, Complex s, double u_max) {
  // t = e^{-u}: int_0^inf e^{-s u} f(e^{-u}) du.
  const auto g = [&](double u) { return std::exp(-s * u) * f(std::exp(-u)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, u_max, 20,
                                                                       1e-15);
}

}  // namespace oracle
