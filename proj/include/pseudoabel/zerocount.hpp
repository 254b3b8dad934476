#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pseudoabel/jseries.hpp"
#include "pseudoabel/mellin.hpp"

namespace pseudoabel {

struct ZeroInfo {
  double location = 0.0;
  int multiplicity = 1;
  // How far the certifying values clear their error bound (absolute).
  double residual_margin = 0.0;
};

enum class CountMethod { SignScan, ArgumentPrinciple };

std::string_view to_string(CountMethod method);

struct ZeroCountReport {
  int count = 0;
  bool certified = false;
  std::vector<ZeroInfo> zeros;
  CountMethod method = CountMethod::SignScan;
  // min(|f| - error) over the certifying grid or contour.
  double margin = 0.0;
  // (0, floor) is certified zero-free; 0 when no floor was established.
  double floor = 0.0;
  std::vector<std::pair<double, double>> flagged;
  std::string note;
};

struct ScanOptions {
  int points_per_decade = 64;
  int min_points = 256;
};

ZeroCountReport count_zeros_interval(const JSeries& sigma, double t_min,
                                     double t_max, const ScanOptions& opts = {});

// Largest eps such that the leading asymptotic term beats the remainder
// envelope by `factor` on (0, eps]; 0 if none exists.
double zero_free_floor(const JSeries& sigma, double factor = 10.0);

// N(f) on (0, 1): scan above the asymptotic floor.
ZeroCountReport count_zeros_unit(const JSeries& sigma, const ScanOptions& opts = {});

// True when every asymptotic coefficient cancels to rounding.
bool numerically_zero(const JSeries& sigma);

Complex petrov_numeric(const JSeries& sigma, double kappa, double t);

struct PhaseTrace {
  double increment = 0.0;
  double min_modulus = 0.0;
  double margin = 0.0;
  int samples = 0;
  bool resolved = true;
};

// Unwrapped arg increment of g along u in [a, b]; g returns (value, error).
PhaseTrace trace_phase(const std::function<std::pair<Complex, double>(double)>& g,
                       double a, double b, int initial_samples = 64);

double arg_increment_arc(const JSeries& sigma, double radius, double kappa);

double delta_zero(const JSeries& sigma, double kappa);

struct SectorContour {
  double kappa = 0.5;
  double epsilon_inner = 0.01;
  double outer_radius = 1.0;
};

ZeroCountReport argument_principle_count(const JSeries& sigma,
                                         const SectorContour& contour);

enum class PetrovStatus { Holds, Violated, Inconclusive };

std::string_view to_string(PetrovStatus status);

struct PetrovCheck {
  int n_f = 0;
  int n_pf = 0;
  double delta1 = 0.0;
  double delta0 = 0.0;
  // 1 + N(Pf) + (delta1 - delta0)/2pi, inner arc traversed clockwise.
  double rhs = 0.0;
  // 1 + N(Pf) + (delta1 + delta0)/2pi.
  double rhs_literal = 0.0;
  bool holds = false;
  bool literal_holds = false;
  bool pf_zero = false;
  PetrovStatus status = PetrovStatus::Inconclusive;
  std::string note;
};

PetrovCheck verify_petrov(const JSeries& sigma, double kappa);

struct ReductionOptions {
  bool zero_counts = false;
  bool throw_on_residual = true;
  double t_lo = 0.1;
  double t_hi = 0.9;
  int residual_points = 81;
};

struct ReductionStep {
  int progression = 0;
  double kappa = 0.0;
  JSeries series;
  std::vector<int> surviving;
  KernelStats stats;
  // Zero-count data for real series; status "skipped" otherwise.
  std::string status = "skipped";
  int n_before = 0;
  int n_after = 0;
  double delta1 = 0.0;
  double delta0 = 0.0;
  double bound = 0.0;
};

struct ReductionReport {
  std::vector<ReductionStep> steps;
  double final_residual = 0.0;
  double tolerance = 0.0;
  bool final_empty = false;
  bool bookkeeping_ok = false;
  bool ok = false;
};

std::vector<int> surviving_progressions(const JSeries& sigma);

ReductionReport reduction_chain(const JSeries& sigma,
                                const ReductionOptions& opts = {});

}  // namespace pseudoabel
