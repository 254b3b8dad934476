#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pseudoabel/jseries.hpp"

namespace pseudoabel {

// c1 t^alpha + c2 t^alpha log t.  mass1/mass2 hold the sums of absolute
// contributions, so cancellation down to rounding can be recognised.
struct AsymptoticTerm {
  double alpha = 0.0;
  Complex c1;
  Complex c2;
  double mass1 = 0.0;
  double mass2 = 0.0;

  bool vanishing() const;
};

// Aggregated expansion of the stored terms, sorted by alpha.
std::vector<AsymptoticTerm> asymptotic_expansion(const JSeries& sigma);

std::pair<Complex, Complex> asymptotic_coeffs(const JSeries& sigma,
                                              double alpha);

// First term whose coefficients do not cancel to rounding.
std::optional<AsymptoticTerm> leading_term(const JSeries& sigma);

// weight * r^beta * |log r|^log_power, valid for 0 < r <= 1.
struct EnvelopeTerm {
  double weight = 0.0;
  double beta = 0.0;
  int log_power = 0;
};

struct PartialSum {
  double requested = 0.0;
  double cut = 0.0;
  std::vector<AsymptoticTerm> terms;
  std::vector<EnvelopeTerm> envelope_terms;

  Complex evaluate(double t) const;
  double envelope(double t) const;
};

// Nearest point to cutoff whose distance to every k/lambda_i is at least
// 1/(2(2n+1) max lambda).
double admissible_cut(const JSeries& sigma, double cutoff);

PartialSum asymptotic_partial_sum(const JSeries& sigma, double cutoff);

// Same without moving the cut; cut must not coincide with an exponent.
PartialSum partial_sum_at(const JSeries& sigma, double cut);

}  // namespace pseudoabel
