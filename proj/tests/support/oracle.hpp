#pragma once

// Reference computations that share no code with the library: 50-digit
// arithmetic for series data, Boost quadrature for integrals.

#include <complex>
#include <functional>

#include "pseudoabel/jseries.hpp"
#include "pseudoabel/mellin.hpp"

namespace oracle {

using pseudoabel::Complex;

// (e^z - 1)/z.
Complex phi(Complex z);

// l_{pq lambda mu} at modulus * e^{i argument}.
Complex ell(int p, int q, double lambda, double mu, double modulus, double argument);

// Termwise sum of the stored terms.
Complex series(const pseudoabel::JSeries& sigma, double modulus, double argument);

// Termwise sum of a Mellin representation at s.
Complex mellin(const pseudoabel::MellinRep& g, Complex s);

// t d/dt of the stored sum, divided by t.
Complex series_derivative(const pseudoabel::JSeries& sigma, double t);

// Area of {x y (1 - x - y) >= t} inside the triangle, by 2D quadrature.
double triangle_area(double t);

// int x^{p-1} y^q dx along y = t^{1/mu} x^{-lambda/mu}, x from t^{1/lambda} to 1.
double corner_quadrature(int p, int q, double lambda, double mu, double t);

// int_0^1 t^{s-1} f(t) dt by Gauss-Kronrod in u = -log t.
Complex mellin_quadrature(const std::function<Complex(double)>& f, Complex s, double u_max);

}  // namespace oracle
