#pragma once

#include <random>

#include "pseudoabel/jseries.hpp"

namespace pseudoabel {

struct RandomSeriesOptions {
  bool real = true;
  bool exact = false;
  // Allow a-terms with p = q on one progression (t^x log t terms).
  bool allow_diagonal_resonance = true;
  int max_n = 3;
  int max_order = 16;
  double lambda_min = 0.6;
  double lambda_max = 2.4;
};

JSeries random_series(std::mt19937_64& rng, const RandomSeriesOptions& opts = {});

}  // namespace pseudoabel
