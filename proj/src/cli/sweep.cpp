#include "pseudoabel/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace pseudoabel {

SweepSpec default_sweep(const JSeries& base) {
  SweepSpec spec;
  for (std::size_t i = 0; i < base.spectrum.size(); ++i) {
    spec.axes.push_back({SweepAxis::Kind::Exponent, static_cast<int>(i), -0.01, 0.01, 3});
  }
  return spec;
}

JSeries perturb_series(const JSeries& base, const SweepSpec& spec,
                       const std::vector<double>& nu) {
  if (nu.size() != spec.axes.size()) fail(ErrorCode::Domain, "one value per axis required");
  std::vector<double> lambdas(base.spectrum.values().begin(), base.spectrum.values().end());
  JSeries s = base;
  for (std::size_t k = 0; k < nu.size(); ++k) {
    const SweepAxis& ax = spec.axes[k];
    if (ax.kind == SweepAxis::Kind::Exponent) {
      if (ax.index < 0 || ax.index >= static_cast<int>(lambdas.size())) {
        fail(ErrorCode::Domain, "exponent axis index out of range");
      }
      lambdas[ax.index] *= 1.0 + nu[k];
      if (!(lambdas[ax.index] > 0.0)) fail(ErrorCode::Domain, "perturbed exponent not positive");
    } else {
      const int na = static_cast<int>(s.a.size());
      if (ax.index < 0 || ax.index >= na + static_cast<int>(s.b.size())) {
        fail(ErrorCode::Domain, "coefficient axis index out of range");
      }
      if (ax.index < na) {
        s.a[ax.index].coef *= 1.0 + nu[k];
      } else {
        s.b[ax.index - na].coef *= 1.0 + nu[k];
      }
    }
  }
  s.spectrum = Spectrum(lambdas);
  s.C = fitted_constant(s);
  if (s.tail) s.tail->C = std::max(s.tail->C, s.C);
  validate(s);
  return s;
}

namespace {

std::vector<std::vector<double>> grid_points(const SweepSpec& spec) {
  std::vector<std::vector<double>> pts{{}};
  for (const auto& ax : spec.axes) {
    if (ax.points < 1) fail(ErrorCode::Config, "axis needs at least one point");
    std::vector<std::vector<double>> next;
    for (const auto& p : pts) {
      for (int k = 0; k < ax.points; ++k) {
        const double v = ax.points == 1 ? 0.5 * (ax.lo + ax.hi)
                                        : ax.lo + (ax.hi - ax.lo) * k / (ax.points - 1);
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

SweepRow evaluate_point(const SweepSpec& spec, const JSeries& base,
                        const std::vector<double>& nu) {
  SweepRow row;
  row.nu = nu;
  try {
    const JSeries s = perturb_series(base, spec, nu);
    row.exponents.assign(s.spectrum.values().begin(), s.spectrum.values().end());
    const ZeroCountReport rep = count_zeros_unit(s, spec.scan);
    row.count = rep.count;
    row.certified = rep.certified;
    row.margin = rep.margin;
    if (spec.petrov && !s.spectrum.empty()) {
      const PetrovCheck pc = verify_petrov(s, kPi * s.spectrum[s.spectrum.size() - 1]);
      row.n_pf = pc.n_pf;
      row.delta1 = pc.delta1;
      row.delta0 = pc.delta0;
      row.petrov_status = std::string(to_string(pc.status));
    }
  } catch (const Error& e) {
    row.status = std::string(to_string(e.code()));
  }
  row.flagged = !row.certified || row.status != "ok";
  return row;
}

SweepResult summarize(std::vector<SweepRow> rows) {
  SweepResult res;
  res.rows = std::move(rows);
  for (const auto& r : res.rows) {
    if (r.status == "ok") res.max_count = std::max(res.max_count, r.count);
    if (r.flagged) ++res.flagged;
  }
  return res;
}

}  // namespace

SweepResult sweep_zero_counts(const SweepSpec& spec, const JSeries& base) {
  const auto pts = grid_points(spec);
  std::vector<SweepRow> rows(pts.size());
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) rows[k] = evaluate_point(spec, base, pts[k]);
  return summarize(std::move(rows));
}

SweepResult sweep_zero_counts_serial(const SweepSpec& spec, const JSeries& base) {
  std::vector<SweepRow> rows;
  for (const auto& p : grid_points(spec)) rows.push_back(evaluate_point(spec, base, p));
  return summarize(std::move(rows));
}

}  // namespace pseudoabel
