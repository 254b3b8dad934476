#include <algorithm>
#include <cmath>
#include <set>

#include "pseudoabel/zerocount.hpp"

namespace pseudoabel {

std::vector<int> surviving_progressions(const JSeries& sigma) {
  std::set<int> used;
  for (const auto& t : sigma.a) {
    used.insert(t.i);
    used.insert(t.j);
  }
  for (const auto& t : sigma.b) used.insert(t.i);
  return {used.begin(), used.end()};
}

namespace {

bool uses(const JSeries& s, int k) {
  const auto v = surviving_progressions(s);
  return std::find(v.begin(), v.end(), k) != v.end();
}

void count_step(const JSeries& before, ReductionStep& step) {
  if (!before.is_real(1e-12)) return;
  try {
    const ZeroCountReport nb = count_zeros_unit(before);
    step.n_before = nb.count;
    if (numerically_zero(step.series)) {
      step.n_after = 0;
    } else {
      const ZeroCountReport na = count_zeros_unit(step.series);
      step.n_after = na.count;
      if (!na.certified) {
        step.status = "inconclusive";
        return;
      }
    }
    if (!nb.certified) {
      step.status = "inconclusive";
      return;
    }
    if (numerically_zero(before)) {
      step.status = "zero";
      return;
    }
    step.delta1 = arg_increment_arc(before, 1.0, step.kappa);
    step.delta0 = delta_zero(before, step.kappa);
    step.bound = 1.0 + (step.delta1 - step.delta0) / (2.0 * kPi);
    step.status = step.n_before <= step.n_after + step.bound + 1e-9 ? "holds" : "violated";
  } catch (const Error&) {
    step.status = "inconclusive";
  }
}

}  // namespace

ReductionReport reduction_chain(const JSeries& sigma, const ReductionOptions& opts) {
  ReductionReport rep;
  const int n = static_cast<int>(sigma.spectrum.size());
  std::vector<int> expect = surviving_progressions(sigma);
  rep.bookkeeping_ok = true;

  JSeries cur = sigma;
  JSeries generic = sigma;
  double growth = 1.0;
  double max_exp = 0.0;
  for (const auto& t : sigma.a) {
    max_exp = std::max({max_exp, std::abs(sigma.exponent(t.p, t.i)),
                        std::abs(sigma.exponent(t.q, t.j))});
  }
  for (const auto& t : sigma.b) max_exp = std::max(max_exp, std::abs(sigma.exponent(t.r, t.i)));

  for (int k = n - 1; k >= 0; --k) {
    const double kappa = kPi * sigma.spectrum[k];
    // A double pole on the progression needs a second pass.
    for (int pass = 0; pass < 3; ++pass) {
      if (pass > 0 && !uses(cur, k)) break;
      ReductionStep step;
      step.progression = k;
      step.kappa = kappa;
      step.series = petrov_series(cur, kappa, {.snap_zeros = true, .target = k}, &step.stats);
      validate(step.series);
      step.surviving = surviving_progressions(step.series);
      if (opts.zero_counts) count_step(cur, step);
      generic = petrov_series(generic, kappa, {.snap_zeros = false, .target = std::nullopt});
      growth *= 1.0 + kappa * max_exp;
      if (step.stats.max_snapped > 1e-10 * (1.0 + kappa * max_exp)) {
        rep.bookkeeping_ok = false;
      }
      cur = step.series;
      rep.steps.push_back(std::move(step));
    }
    std::erase_if(expect, [k](int v) { return v >= k; });
    if (surviving_progressions(cur) != expect) rep.bookkeeping_ok = false;
  }
  rep.final_empty = cur.empty();

  double residual = 0.0;
  double tol = 0.0;
  const int np = std::max(2, opts.residual_points);
  for (int q = 0; q < np; ++q) {
    const double t = opts.t_lo + (opts.t_hi - opts.t_lo) * q / (np - 1);
    const EvalResult fin = jseries_eval(generic, real_point(t));
    const EvalResult orig = jseries_eval(sigma, real_point(t));
    // orig.rounding is 16 eps times the absolute term sum.
    const double budget = 16.0 * orig.rounding * growth;
    residual = std::max(residual, std::abs(fin.value));
    tol = std::max(tol, 10.0 * (fin.tail_bound + budget));
  }
  rep.final_residual = residual;
  rep.tolerance = tol;
  rep.ok = residual <= tol && rep.final_empty && rep.bookkeeping_ok;
  if (opts.throw_on_residual && residual > tol) {
    fail(ErrorCode::ResidualNotZero, "reduction chain left a nonzero residual");
  }
  return rep;
}

}  // namespace pseudoabel
