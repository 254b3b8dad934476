#pragma once

#include <string>
#include <vector>

#include "pseudoabel/jseries.hpp"
#include "pseudoabel/zerocount.hpp"

namespace pseudoabel {

// One grid axis: relative perturbation nu in [lo, hi] sampled at `points`.
// Exponent axes map lambda_index -> lambda_index (1 + nu); coefficient axes
// scale the index-th stored term (a-terms first, then b-terms).
struct SweepAxis {
  enum class Kind { Exponent, Coefficient } kind = Kind::Exponent;
  int index = 0;
  double lo = -0.01;
  double hi = 0.01;
  int points = 3;
};

struct SweepSpec {
  std::vector<SweepAxis> axes;
  ScanOptions scan;
  // Also run the Petrov check at kappa = pi lambda_n for every point.
  bool petrov = true;
};

// Default: every exponent perturbed by +-1% on three points.
SweepSpec default_sweep(const JSeries& base);

struct SweepRow {
  std::vector<double> nu;
  std::vector<double> exponents;
  int count = 0;
  bool certified = false;
  double margin = 0.0;
  int n_pf = 0;
  double delta1 = 0.0;
  double delta0 = 0.0;
  std::string petrov_status = "skipped";
  std::string status = "ok";
  bool flagged = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int max_count = 0;
  int flagged = 0;
};

JSeries perturb_series(const JSeries& base, const SweepSpec& spec,
                       const std::vector<double>& nu);

SweepResult sweep_zero_counts(const SweepSpec& spec, const JSeries& base);
SweepResult sweep_zero_counts_serial(const SweepSpec& spec, const JSeries& base);

}  // namespace pseudoabel
