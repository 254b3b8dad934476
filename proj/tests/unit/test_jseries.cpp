#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "oracle.hpp"
#include "pseudoabel/asymptotics.hpp"
#include "pseudoabel/jseries.hpp"

using namespace pseudoabel;

namespace {

JSeries single_b(double lambda, int r, Complex c, bool exact = true) {
  JSeries s = make_series(Spectrum({lambda}), 0, 3.0, 3.0, 8, exact);
  s.b.push_back({r, 0, c});
  return s;
}

JSeries ell_series(int p, int q, std::vector<double> lambdas, int i, int j, bool exact = true) {
  JSeries s = make_series(Spectrum(std::move(lambdas)), 0, 9.0, 3.0, 8, exact);
  s.a.push_back({p, q, i, j, 1.0});
  return s;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("spectrum invariants") {
  CHECK_THROWS_AS(Spectrum({1.0, -2.0}), Error);
  CHECK_THROWS_AS(Spectrum({1.0, 1.0 + 1e-14}), Error);
  CHECK_NOTHROW(Spectrum({1.0, 1.0 + 1e-9}));
  const Spectrum s({2.0, 0.5, 1.5});
  CHECK(s.min() == 0.5);
  CHECK(s.max() == 2.0);
  CHECK(s[1] == 0.5);
}

TEST_CASE("phi_stable") {
  CHECK(phi_stable(0.0) == Complex(1.0));
  CHECK(rel(phi_stable(1.0), std::exp(1.0) - 1.0) < 1e-15);
  CHECK(rel(phi_stable(1e-10), 1.0 + 5e-11) < 1e-15);
  auto r = gen::rng(11);
  for (int k = 0; k < 500; ++k) {
    const double m = std::pow(10.0, gen::uniform(r, -16, 0));
    const Complex z = std::polar(m, gen::uniform(r, -kPi, kPi));
    CHECK(rel(phi_stable(z), oracle::phi(z)) < 1e-14);
  }
}

TEST_CASE("compensator examples") {
  CHECK(compensator_eval(1, 1, 1, 1, {0.5, 0.0}).real() ==
        doctest::Approx(0.5 * std::log(0.5)).epsilon(1e-15));
  CHECK(std::abs(compensator_eval(3, 2, 1.3, 0.7, {1.0, 0.0})) == 0.0);
  CHECK(std::abs(compensator_eval(1, 1, 1, 2, {0.25, 0.0}) - Complex(-0.5)) < 1e-15);
  CHECK_THROWS_AS(compensator_eval(1, 1, 0.0, 1.0, {0.5, 0.0}), Error);
  CHECK_THROWS_AS(compensator_eval(1, 1, 1.0, -1.0, {0.5, 0.0}), Error);
}

TEST_CASE("compensator properties") {
  auto r = gen::rng(12);
  for (int k = 0; k < 400; ++k) {
    const int p = gen::integer(r, 1, 12);
    const int q = gen::integer(r, 1, 12);
    const double lambda = gen::uniform(r, 0.3, 3.0);
    const double mu = gen::uniform(r, 0.3, 3.0);
    const SectorPoint pt{gen::uniform(r, 1e-4, 1.0), gen::uniform(r, -1.0, 1.0)};
    const Complex v = compensator_eval(p, q, lambda, mu, pt);
    // Bit-for-bit symmetry.
    CHECK(v == compensator_eval(q, p, mu, lambda, pt));
    CHECK(rel(v, oracle::ell(p, q, lambda, mu, pt.modulus, pt.argument)) < 1e-12);
    // |t^{-gamma} l| <= |log t| with gamma the smaller exponent (real t).
    const double t = pt.modulus;
    const double gamma = std::min(p / lambda, q / mu);
    const double lv = compensator_eval(p, q, lambda, mu, real_point(t)).real();
    CHECK(std::abs(std::pow(t, -gamma) * lv) <= std::abs(std::log(t)) * (1 + 1e-12));
  }
}

TEST_CASE("compensator continuity at resonance") {
  for (double t : {0.01, 0.3, 0.9}) {
    const double x = 1.7;
    const double delta = 1e-12;
    const Complex a = compensator(x + delta, x, Complex(std::log(t), 0.0));
    const double res = std::pow(t, x) * std::log(t);
    CHECK(std::abs(a.real() - res) <= 1e-10 * std::abs(res));
  }
}

TEST_CASE("jseries_eval examples") {
  const JSeries s = single_b(1.0, 1, 1.0);
  const EvalResult r = jseries_eval(s, real_point(0.3));
  CHECK(r.value.real() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(r.tail_bound == 0.0);
  const JSeries l = ell_series(1, 1, {1.0, 2.0}, 0, 1);
  CHECK(std::abs(jseries_value(l, real_point(0.25)) - Complex(-0.5)) < 1e-15);
}

TEST_CASE("jseries_eval vs 50-digit oracle") {
  auto r = gen::rng(13);
  for (int k = 0; k < 60; ++k) {
    const JSeries s = gen::series(r, k % 2 == 0);
    const SectorPoint pt{0.5, kPi / 4};
    const EvalResult e = jseries_eval(s, pt);
    CHECK(std::abs(e.value - oracle::series(s, pt.modulus, pt.argument)) <= e.rounding + 1e-14);
    CHECK(e.tail_bound > 0.0);
  }
}

TEST_CASE("reality on the real axis") {
  auto r = gen::rng(14);
  for (int k = 0; k < 40; ++k) {
    const JSeries s = gen::series(r, true);
    for (double t : gen::t_grid()) CHECK(std::abs(jseries_value(s, real_point(t)).imag()) <= 1e-13);
  }
}

TEST_CASE("sector certificate") {
  JSeries s = single_b(1.0, 1, 1.0, false);
  // Inside the unit disk the certificate never fails.
  CHECK(sector_certified(s, {0.5, 100.0}));
  // Outside it the modulus and the argument both count.
  CHECK_FALSE(sector_certified(s, {2.0, 0.0}));
  CHECK_THROWS_AS(jseries_eval(s, {2.0, 0.0}), Error);
}

TEST_CASE("derivative") {
  const JSeries s = single_b(1.0, 1, 1.0);
  for (double t : {0.1, 0.5, 0.9}) CHECK(jseries_derivative(s, t).real() == doctest::Approx(1.0));
  const JSeries l = ell_series(1, 1, {1.0, 2.0}, 0, 1);
  CHECK(std::abs(jseries_derivative(l, 0.25)) < 1e-14);
  auto r = gen::rng(15);
  for (int k = 0; k < 30; ++k) {
    const JSeries g = gen::series(r, true);
    for (double t : gen::t_grid()) {
      const double h = 1e-6;
      const Complex fd = (jseries_value(g, real_point(t + h)) - jseries_value(g, real_point(t - h))) / (2 * h);
      const Complex d = jseries_derivative(g, t);
      CHECK(std::abs(d - fd) <= 1e-6 * std::max(1.0, std::abs(d)));
      CHECK(std::abs(d - oracle::series_derivative(g, t)) <= 1e-12 * std::max(1.0, std::abs(d)));
    }
  }
}

TEST_CASE("asymptotic coefficients") {
  {
    const JSeries s = single_b(2.0, 1, 3.0);
    const auto [c1, c2] = asymptotic_coeffs(s, 0.5);
    CHECK(c1 == Complex(3.0));
    CHECK(c2 == Complex(0.0));
  }
  {
    const JSeries s = ell_series(1, 1, {1.0}, 0, 0);
    const auto [c1, c2] = asymptotic_coeffs(s, 1.0);
    CHECK(std::abs(c1) == 0.0);
    CHECK(c2 == Complex(1.0));
  }
  {
    const JSeries s = ell_series(1, 1, {1.0, 2.0}, 0, 1);
    const auto [a1, a2] = asymptotic_coeffs(s, 1.0);
    const auto [b1, b2] = asymptotic_coeffs(s, 0.5);
    CHECK(std::abs(a1 - Complex(2.0)) < 1e-15);
    CHECK(std::abs(a2) == 0.0);
    CHECK(std::abs(b1 - Complex(-2.0)) < 1e-15);
    CHECK(std::abs(b2) == 0.0);
    const auto none = asymptotic_coeffs(s, 0.7);
    CHECK(std::abs(none.first) == 0.0);
  }
}

TEST_CASE("asymptotic partial sums") {
  {
    const JSeries s = single_b(1.0, 1, 1.0);
    const PartialSum ps = asymptotic_partial_sum(s, 2.0);
    REQUIRE(ps.terms.size() == 1);
    CHECK(ps.terms[0].alpha == 1.0);
    CHECK(ps.terms[0].c1 == Complex(1.0));
    for (double t : {1e-3, 0.1, 0.5}) CHECK(ps.envelope(t) == 0.0);
  }
  {
    const JSeries s = ell_series(1, 1, {1.0, 2.0}, 0, 1);
    const PartialSum ps = asymptotic_partial_sum(s, 0.75);
    REQUIRE(ps.terms.size() == 1);
    CHECK(ps.terms[0].alpha == 0.5);
    CHECK(std::abs(ps.terms[0].c1 - Complex(-2.0)) < 1e-15);
    for (double t : {1e-4, 1e-2, 0.3, 0.9}) {
      const EvalResult e = jseries_eval(s, real_point(t));
      const double diff = std::abs(e.value - ps.evaluate(t));
      CHECK(diff == doctest::Approx(2 * t).epsilon(1e-10));
      CHECK(diff <= ps.envelope(t) + e.error());
    }
  }
  auto r = gen::rng(16);
  for (int k = 0; k < 40; ++k) {
    const JSeries s = gen::series(r, k % 2 == 0);
    const double cutoff = gen::uniform(r, 0.5, 3.0);
    const PartialSum ps = asymptotic_partial_sum(s, cutoff);
    for (double t : {1e-3, 1e-2, 0.1, 0.5}) {
      const EvalResult e = jseries_eval(s, real_point(t));
      CHECK(std::abs(e.value - ps.evaluate(t)) <= ps.envelope(t) + e.error());
    }
  }
}

TEST_CASE("admissible cut keeps its distance") {
  auto r = gen::rng(17);
  for (int k = 0; k < 50; ++k) {
    const JSeries s = gen::series(r);
    const double cut = admissible_cut(s, gen::uniform(r, 0.3, 4.0));
    const double d = 1.0 / (2 * (2 * s.spectrum.size() + 1) * s.spectrum.max());
    for (double l : s.spectrum.values()) {
      const double k0 = std::round(cut * l);
      CHECK(std::abs(cut - k0 / l) >= d * (1 - 1e-12));
    }
  }
}

TEST_CASE("rotate_series") {
  auto r = gen::rng(18);
  const JSeries b = single_b(1.0, 1, 1.0);
  CHECK(rotate_series(b, 0.0).b[0].coef == Complex(1.0));
  {
    const double kappa = 0.4;
    const JSeries rb = rotate_series(b, kappa);
    for (double t : {0.2, 0.5}) {
      CHECK(std::abs(jseries_value(rb, real_point(t)) - std::polar(t, kappa)) < 1e-15);
    }
  }
  for (int k = 0; k < 40; ++k) {
    const JSeries s = gen::series(r, k % 2 == 0);
    const JSeries rs = rotate_series(s, 0.3);
    CHECK_NOTHROW(validate(rs));
    for (double t : {0.2, 0.5, 0.8}) {
      const Complex lhs = jseries_value(rs, real_point(t));
      const Complex rhs = jseries_value(s, {t, 0.3});
      CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
    // Composition.
    const JSeries r12 = rotate_series(rotate_series(s, 0.2), 0.15);
    const JSeries r3 = rotate_series(s, 0.35);
    for (double t : gen::t_grid()) {
      CHECK(std::abs(jseries_value(r12, real_point(t)) - jseries_value(r3, real_point(t))) <= 1e-8);
    }
  }
}

TEST_CASE("validate rejects broken series") {
  JSeries s = single_b(1.0, 1, 1.0);
  s.b[0].coef = 10.0;  // above C rho^-1
  CHECK_THROWS_AS(validate(s), Error);
  s = single_b(1.0, 1, 1.0);
  s.rho = 2.0;
  CHECK_THROWS_AS(validate(s), Error);
  s = single_b(1.0, 0, 0.1);
  CHECK_THROWS_AS(validate(s), Error);  // index below 1 - m
  s.m = 1;
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("eval_grid parallel matches serial") {
  auto r = gen::rng(19);
  const JSeries s = gen::series(r, false);
  std::vector<double> ts;
  for (int k = 1; k < 500; ++k) ts.push_back(k / 500.0);
  const auto a = eval_grid(s, ts, 0.2);
  const auto b = eval_grid_serial(s, ts, 0.2);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].value == b[k].value);
    CHECK(a[k].tail_bound == b[k].tail_bound);
  }
}
