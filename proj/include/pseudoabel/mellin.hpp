#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pseudoabel/jseries.hpp"

namespace pseudoabel {

// coef / ((s + p/lambda_i)(s + q/lambda_j)).
struct DoublePole {
  int p = 0;
  int q = 0;
  int i = 0;
  int j = 0;
  Complex coef;
};

// coef / (s + r/lambda_i).
struct SimplePole {
  int r = 0;
  int i = 0;
  Complex coef;
};

// Mellin image of a J-series.  Since M(l)(s) = -1/((s+x)(s+y)), the double
// coefficient is minus the series coefficient a.
struct MellinRep {
  Spectrum spectrum;
  int m = 0;
  double C = 1.0;
  double rho = 3.0;
  int order = 24;
  std::vector<DoublePole> doubles;
  std::vector<SimplePole> simples;
  std::optional<TailModel> tail;

  double exponent(int k, int i) const { return k / spectrum[i]; }
  // Smallest x over poles s = -x; 0 when empty.
  double lower_exponent() const;
  bool empty() const { return doubles.empty() && simples.empty(); }
};

MellinRep mellin_forward(const JSeries& sigma);
JSeries mellin_to_series(const MellinRep& g);

Complex mellin_eval_at(const MellinRep& g, Complex s);

// c2/(s - location)^2 + c1/(s - location), merged within tol.
struct PrincipalPart {
  double location = 0.0;
  Complex c2;
  Complex c1;
};

std::vector<PrincipalPart> principal_parts(const MellinRep& g,
                                           double tol = kTolPole);

struct QuadResult {
  Complex value;
  double error = 0.0;
};

// int_0^1 t^{s-1} f(t) dt for f = O(t^lowest_exponent) at 0.
QuadResult mellin_numeric(const std::function<Complex(double)>& f,
                          double lowest_exponent, Complex s,
                          double quad_tol = 1e-10);

struct ContourSpec {
  double M = 0.0;
  // Ray length; 0 picks 1 + 40/|log t|.
  double T = 0.0;
  double quad_tol = 1e-8;
};

ContourSpec default_contour(const MellinRep& g, double quad_tol = 1e-8);

QuadResult inverse_mellin(const MellinRep& g, double t,
                          const ContourSpec& contour);

struct Kernel {
  std::function<Complex(Complex)> value;
  std::function<Complex(Complex)> deriv;
  std::function<Complex(Complex, Complex)> div_diff;
  // Bounds of |K| and |K'| on the real axis; they drive the certificate.
  double value_bound = 1.0;
  double deriv_bound = 0.0;
  // K as a combination of e^{-i angle s}: enough to carry the tail bound.
  std::optional<std::vector<TailShift>> rotations;
  // True where K vanishes exactly (used to drop killed poles).
  std::function<bool(double)> exact_zero;
  std::string growth = "bounded on horizontal strips";
};

Kernel kernel_identity();
// K(s) = e^{-i kappa s}: the image evaluates to f(e^{i kappa} t).
Kernel kernel_exp(double kappa);
Kernel kernel_sin(double kappa);
Kernel kernel_product(const Kernel& k1, const Kernel& k2);

struct KernelOptions {
  // Treat kernel values at exact zeros as 0 and simplify the pole data.
  bool snap_zeros = false;
  // Spectrum index whose progression is being removed; surviving simple
  // terms of resonant pairs are keyed on the other slot.
  std::optional<int> target;
};

struct KernelStats {
  int snapped = 0;
  // Largest |K(-x)| that was replaced by zero.
  double max_snapped = 0.0;
};

MellinRep apply_kernel(const MellinRep& g, const Kernel& K,
                       const KernelOptions& opts = {},
                       KernelStats* stats = nullptr);

// Series of (f(t e^{-i kappa}) - f(t e^{i kappa}))/(2i).
JSeries petrov_series(const JSeries& sigma, double kappa,
                      const KernelOptions& opts = {.snap_zeros = true, .target = std::nullopt},
                      KernelStats* stats = nullptr);

}  // namespace pseudoabel
