#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pseudoabel/error.hpp"
#include "pseudoabel/types.hpp"

namespace pseudoabel {

class Spectrum {
 public:
  Spectrum() = default;
  // Throws InvalidSeries unless every entry is positive and entries are
  // pairwise distinct to kTolSpec (relative).
  explicit Spectrum(std::vector<double> lambdas);

  std::size_t size() const { return lambdas_.size(); }
  bool empty() const { return lambdas_.empty(); }
  double operator[](std::size_t i) const { return lambdas_[i]; }
  std::span<const double> values() const { return lambdas_; }

  double min() const;
  double max() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> lambdas_;
};

// (e^z - 1)/z, equal to 1 at z = 0.
Complex phi_stable(Complex z);

// (t^x - t^y)/(x - y) for log t = log_t, t^x log t at x = y.  Symmetric in
// (x, y) bit for bit.
Complex compensator(double x, double y, Complex log_t);

// Derivative in t of compensator(x, y, .) at real t > 0.
double compensator_derivative(double x, double y, double t);

// l_{pq lambda mu}(t) for exponents p/lambda and q/mu.
Complex compensator_eval(int p, int q, double lambda, double mu,
                         SectorPoint point);

// (e^{c x} - e^{c y})/(x - y), stable at x = y.
Complex exp_divided_difference(Complex c, double x, double y);

struct ATerm {
  int p = 0;
  int q = 0;
  int i = 0;
  int j = 0;
  Complex coef;
};

struct BTerm {
  int r = 0;
  int i = 0;
  Complex coef;
};

// A rotated copy of the discarded remainder: contributes
// weight * |remainder(t e^{i angle})|.
struct TailShift {
  double weight = 1.0;
  double angle = 0.0;
};

// Certificate of the orders p+q > order, r > order that were cut off from
// the original series.  Linear operations acting by rotations keep the bound
// by transforming the shift list.
struct TailModel {
  double C = 1.0;
  double rho = 3.0;
  int m = 0;
  int order = 24;
  std::vector<TailShift> shifts{TailShift{}};
};

struct JSeries {
  Spectrum spectrum;
  int m = 0;
  double C = 1.0;
  double rho = 3.0;
  int order = 24;
  std::vector<ATerm> a;
  std::vector<BTerm> b;
  // Empty when the stored terms are the whole function.
  std::optional<TailModel> tail;

  bool exact() const { return !tail.has_value(); }
  bool empty() const { return a.empty() && b.empty(); }
  double exponent(int k, int i) const { return k / spectrum[i]; }
  // Smallest exponent over stored terms, 0 for the zero series.
  double lower_exponent() const;
  // Largest |coefficient|.
  double max_coef() const;
  bool is_real(double rel_tol = 0.0) const;
};

// New series with the default tail model derived from its own certificate.
JSeries make_series(Spectrum spectrum, int m = 0, double C = 1.0,
                    double rho = 3.0, int order = 24, bool exact = false);

// Sorts terms by key and merges duplicate keys.
void canonicalize(JSeries& sigma);

// Throws InvalidSeries on any violated structural or decay invariant.
void validate(const JSeries& sigma);

// Smallest C' >= C such that every stored coefficient obeys C' rho^{-k}.
double fitted_constant(const JSeries& sigma);

bool sector_certified(const JSeries& sigma, SectorPoint point);

// Bound on |f - stored sum| at the point (0 for exact series).
double tail_bound(const JSeries& sigma, SectorPoint point);

struct EvalResult {
  Complex value;
  double tail_bound = 0.0;
  double rounding = 0.0;

  double error() const { return tail_bound + rounding; }
};

EvalResult jseries_eval(const JSeries& sigma, SectorPoint point);
Complex jseries_value(const JSeries& sigma, SectorPoint point);

// f'(t) for real t in (0, 1).
Complex jseries_derivative(const JSeries& sigma, double t);

// Series of t -> f(e^{i kappa} t).
JSeries rotate_series(const JSeries& sigma, double kappa);

// Values on a t-grid along a fixed argument; OpenMP over the grid.
std::vector<EvalResult> eval_grid(const JSeries& sigma,
                                  std::span<const double> ts,
                                  double argument = 0.0);
std::vector<EvalResult> eval_grid_serial(const JSeries& sigma,
                                         std::span<const double> ts,
                                         double argument = 0.0);

}  // namespace pseudoabel
