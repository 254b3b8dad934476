#include "pseudoabel/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace pseudoabel {

JSeries random_series(std::mt19937_64& rng, const RandomSeriesOptions& opts) {
  if (opts.max_n < 1 || opts.max_order < 2 || !(opts.lambda_min > 0.0) ||
      !(opts.lambda_max > opts.lambda_min)) {
    fail(ErrorCode::Domain, "invalid random series options");
  }
  std::uniform_int_distribution<int> pick_n(1, opts.max_n);
  std::uniform_real_distribution<double> pick_l(opts.lambda_min, opts.lambda_max);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  const int n = pick_n(rng);
  std::vector<double> lambdas;
  while (static_cast<int>(lambdas.size()) < n) {
    const double l = pick_l(rng);
    const bool far = std::all_of(lambdas.begin(), lambdas.end(),
                                 [&](double o) { return std::abs(o - l) > 0.05; });
    if (far) lambdas.push_back(l);
  }
  std::sort(lambdas.begin(), lambdas.end());
  const int order = std::uniform_int_distribution<int>(std::min(4, opts.max_order), opts.max_order)(rng);
  JSeries s = make_series(Spectrum(lambdas), 0, 1.0, 3.0, order, opts.exact);

  const auto coef = [&](int k) {
    const double scale = s.C * std::pow(s.rho, -k);
    Complex c(unit(rng), opts.real ? 0.0 : unit(rng));
    if (std::abs(c) > 1.0) c /= std::abs(c);
    return scale * c;
  };

  // Low orders dominate the function, so keep them populated.
  for (int i = 0; i < n; ++i) {
    for (int r = 1; r <= order; ++r) {
      if (r <= 2 || u01(rng) < 0.4) s.b.push_back({r, i, coef(r)});
    }
  }
  const int na = std::uniform_int_distribution<int>(0, 4)(rng);
  std::uniform_int_distribution<int> pick_i(0, n - 1);
  std::set<std::tuple<int, int, int, int>> used;
  for (int k = 0; k < na; ++k) {
    const int i = pick_i(rng);
    const int j = pick_i(rng);
    const int p = std::uniform_int_distribution<int>(1, order - 1)(rng);
    const int q = std::uniform_int_distribution<int>(1, order - p)(rng);
    if (!opts.allow_diagonal_resonance && i == j && p == q) continue;
    // Repeated keys would merge and could break the coefficient bound.
    if (!used.insert({p, q, i, j}).second) continue;
    s.a.push_back({p, q, i, j, coef(p + q)});
  }
  canonicalize(s);
  validate(s);
  return s;
}

}  // namespace pseudoabel
