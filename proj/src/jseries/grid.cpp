#include "pseudoabel/jseries.hpp"

namespace pseudoabel {

std::vector<EvalResult> eval_grid(const JSeries& sigma,
                                  std::span<const double> ts, double argument) {
  std::vector<EvalResult> out(ts.size());
  const auto n = static_cast<std::ptrdiff_t>(ts.size());
  // Errors are rethrown on the calling thread.
  std::exception_ptr err;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[k] = jseries_eval(sigma, {ts[k], argument});
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

std::vector<EvalResult> eval_grid_serial(const JSeries& sigma,
                                         std::span<const double> ts,
                                         double argument) {
  std::vector<EvalResult> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(jseries_eval(sigma, {t, argument}));
  return out;
}

}  // namespace pseudoabel
