#include "pseudoabel/zerocount.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>

#include "pseudoabel/asymptotics.hpp"

namespace pseudoabel {

std::string_view to_string(CountMethod method) {
  return method == CountMethod::SignScan ? "sign-scan" : "argument-principle";
}

bool numerically_zero(const JSeries& sigma) {
  if (sigma.empty()) return true;
  for (const auto& t : asymptotic_expansion(sigma)) {
    if (!t.vanishing()) return false;
  }
  return true;
}

PhaseTrace trace_phase(const std::function<std::pair<Complex, double>(double)>& g,
                       double a, double b, int initial_samples) {
  PhaseTrace out;
  out.min_modulus = std::numeric_limits<double>::infinity();
  out.margin = std::numeric_limits<double>::infinity();
  const auto sample = [&](double u) {
    const auto [v, e] = g(u);
    out.min_modulus = std::min(out.min_modulus, std::abs(v));
    out.margin = std::min(out.margin, std::abs(v) - e);
    ++out.samples;
    return v;
  };
  const std::function<void(double, Complex, double, Complex, int)> refine =
      [&](double u0, Complex v0, double u1, Complex v1, int depth) {
        const double d = std::arg(v1 * std::conj(v0));
        if (std::abs(d) < kPi / 4) {
          out.increment += d;
          return;
        }
        if (depth > 48) {
          out.resolved = false;
          out.increment += d;
          return;
        }
        const double um = 0.5 * (u0 + u1);
        const Complex vm = sample(um);
        refine(u0, v0, um, vm, depth + 1);
        refine(um, vm, u1, v1, depth + 1);
      };
  const int n = std::max(2, initial_samples);
  double u_prev = a;
  Complex v_prev = sample(a);
  for (int k = 1; k <= n; ++k) {
    const double u = k == n ? b : a + (b - a) * k / n;
    const Complex v = sample(u);
    refine(u_prev, v_prev, u, v, 0);
    u_prev = u;
    v_prev = v;
  }
  return out;
}

namespace {

struct Sample {
  double t = 0.0;
  double f = 0.0;
  double err = 0.0;
  double df = 0.0;
};

Sample sample_at(const JSeries& s, double t) {
  const EvalResult r = jseries_eval(s, real_point(t));
  return {t, r.value.real(), r.error() + std::abs(r.value.imag()),
          jseries_derivative(s, t).real()};
}

int sgn(double v) { return (v > 0) - (v < 0); }

struct Disk {
  double center = 0.0;
  double radius = 0.0;
  int count = 0;
  double margin = 0.0;
  bool certified = false;
};

Disk winding_disk(const JSeries& s, double z, double radius) {
  Disk d{z, radius, 0, 0.0, false};
  const auto g = [&](double phi) -> std::pair<Complex, double> {
    const Complex t = z + std::polar(radius, phi);
    const EvalResult r = jseries_eval(s, {std::abs(t), std::arg(t)});
    return {r.value, r.error()};
  };
  const PhaseTrace tr = trace_phase(g, 0.0, 2.0 * kPi, 64);
  const double w = tr.increment / (2.0 * kPi);
  d.count = static_cast<int>(std::lround(w));
  d.margin = tr.margin;
  d.certified = tr.resolved && tr.margin > 0.0 && std::abs(w - d.count) < 0.05 &&
                d.count >= 0;
  return d;
}

class Scanner {
 public:
  Scanner(const JSeries& s, double t_min, double t_max, const ScanOptions& opts)
      : s_(s) {
    const double decades = std::log10(t_max / t_min);
    const int n = std::max(opts.min_points,
                           static_cast<int>(std::ceil(decades * opts.points_per_decade)) + 1);
    ratio_ = std::pow(t_max / t_min, 1.0 / (n - 1));
    nodes_.reserve(n);
    for (int k = 0; k < n; ++k) {
      const double t = k == n - 1 ? t_max : t_min * std::pow(ratio_, k);
      nodes_.push_back(sample_at(s, t));
    }
    skip_last_ = t_max >= 1.0 - 1e-12;
  }

  ZeroCountReport run() {
    ZeroCountReport rep;
    rep.method = CountMethod::SignScan;
    const int n = static_cast<int>(nodes_.size());
    const int last = skip_last_ && std::abs(nodes_.back().f) <= nodes_.back().err
                         ? n - 1
                         : n;
    for (int k = 0; k < last; ++k) {
      const Sample& a = nodes_[k];
      if (std::abs(a.f) <= a.err) {
        disk_event(a.t, rep);
        continue;
      }
      if (k + 1 >= last) break;
      const Sample& b = nodes_[k + 1];
      if (std::abs(b.f) <= b.err) continue;
      if (sgn(a.f) != sgn(b.f)) {
        bracket_event(a, b, rep);
      } else if (sgn(a.df) != sgn(b.df)) {
        extremum_event(a, b, rep);
      }
    }
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < last; ++k) {
      if (consumed(nodes_[k].t)) continue;
      margin = std::min(margin, std::abs(nodes_[k].f) - nodes_[k].err);
    }
    for (const Disk& d : disks_) margin = std::min(margin, d.margin);
    rep.margin = margin;
    for (const auto& z : zeros_) rep.count += z.multiplicity;
    rep.zeros = zeros_;
    // Merge overlapping flagged intervals.
    std::sort(flagged_.begin(), flagged_.end());
    for (const auto& iv : flagged_) {
      if (!rep.flagged.empty() && iv.first <= rep.flagged.back().second) {
        rep.flagged.back().second = std::max(rep.flagged.back().second, iv.second);
      } else {
        rep.flagged.push_back(iv);
      }
    }
    rep.certified = flagged_.empty() && margin > 0.0;
    if (rep.note.empty()) rep.note = note_;
    return rep;
  }

 private:
  bool consumed(double t) const {
    for (const Disk& d : disks_) {
      if (std::abs(t - d.center) <= d.radius) return true;
    }
    return false;
  }

  void add_zero(ZeroInfo z) {
    if (consumed(z.location)) return;
    zeros_.push_back(z);
  }

  double refine_root(double lo, double hi) const {
    const auto f = [&](double t) { return jseries_eval(s_, real_point(t)).value.real(); };
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
  }

  double extremum(double lo, double hi) const {
    double dlo = jseries_derivative(s_, lo).real();
    for (int it = 0; it < 100 && hi - lo > 4 * kEps * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double dm = jseries_derivative(s_, mid).real();
      if (sgn(dm) == sgn(dlo)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  void disk_event(double z, ZeroCountReport& rep) {
    if (consumed(z)) return;
    const double h = z * (ratio_ - 1.0);
    Disk d = winding_disk(s_, z, 0.5 * h);
    if (!d.certified) {
      const Disk d2 = winding_disk(s_, z, 0.2 * h);
      if (d2.certified) d = d2;
    }
    // Zeros already recorded inside the disk are counted by its winding.
    std::erase_if(zeros_, [&](const ZeroInfo& zi) {
      return std::abs(zi.location - z) <= d.radius;
    });
    disks_.push_back(d);
    if (!d.certified) {
      flagged_.push_back({z - d.radius, z + d.radius});
      rep.note = note_ = "unresolved dip";
    }
    if (d.count > 0) zeros_.push_back({z, d.count, d.margin});
  }

  void simple_or_disk(double lo, double hi, const Sample& a, const Sample& b) {
    const double z = refine_root(lo, hi);
    const double dz = jseries_derivative(s_, z).real();
    if (sgn(a.df) == sgn(dz) && sgn(b.df) == sgn(dz) && dz != 0.0) {
      add_zero({z, 1, std::min(std::abs(a.f) - a.err, std::abs(b.f) - b.err)});
    } else {
      ZeroCountReport unused;
      disk_event(z, unused);
    }
  }

  void bracket_event(const Sample& a, const Sample& b, ZeroCountReport&) {
    simple_or_disk(a.t, b.t, a, b);
  }

  void extremum_event(const Sample& a, const Sample& b, ZeroCountReport& rep) {
    const double z = extremum(a.t, b.t);
    const Sample m = sample_at(s_, z);
    if (std::abs(m.f) <= m.err) {
      disk_event(z, rep);
    } else if (sgn(m.f) != sgn(a.f)) {
      simple_or_disk(a.t, z, a, m);
      simple_or_disk(z, b.t, m, b);
    }
  }

  const JSeries& s_;
  std::vector<Sample> nodes_;
  double ratio_ = 1.0;
  bool skip_last_ = false;
  std::vector<Disk> disks_;
  std::vector<ZeroInfo> zeros_;
  std::vector<std::pair<double, double>> flagged_;
  std::string note_;
};

void require_real(const JSeries& s) {
  if (!s.is_real(1e-12)) fail(ErrorCode::Domain, "zero counting needs a real series");
}

}  // namespace

ZeroCountReport count_zeros_interval(const JSeries& sigma, double t_min,
                                     double t_max, const ScanOptions& opts) {
  if (!(t_min > 0.0 && t_min < t_max && t_max <= 1.0)) {
    fail(ErrorCode::Domain, "need 0 < t_min < t_max <= 1");
  }
  require_real(sigma);
  if (numerically_zero(sigma) && sigma.exact()) {
    ZeroCountReport rep;
    rep.certified = true;
    rep.margin = 0.0;
    rep.note = "identically zero";
    return rep;
  }
  return Scanner(sigma, t_min, t_max, opts).run();
}

double zero_free_floor(const JSeries& sigma, double factor) {
  const auto lead = leading_term(sigma);
  if (!lead) return 0.0;
  const double a0 = lead->alpha;
  double a1 = a0 + 1.0;
  for (const auto& t : asymptotic_expansion(sigma)) {
    if (t.alpha > a0 + kTolPole) {
      a1 = t.alpha;
      break;
    }
  }
  const PartialSum ps = partial_sum_at(sigma, 0.5 * (a0 + a1));
  for (const auto& e : ps.envelope_terms) {
    if (e.weight > 0.0 && e.beta <= a0 + 1e-12) return 0.0;
  }
  const Complex c1 = lead->c1;
  const Complex c2 = lead->c2;
  const double limit = 1.0 / factor;
  double floor = 0.0;
  double running = 0.0;
  for (double lr = -700.0; lr <= 0.0; lr += 0.05) {
    const double lead_mod = std::abs(c1 + c2 * lr);
    double ratio = std::numeric_limits<double>::infinity();
    if (lead_mod > 0.0) {
      double env = 0.0;
      for (const auto& e : ps.envelope_terms) {
        env += e.weight * std::exp((e.beta - a0) * lr) * std::pow(-lr, e.log_power);
      }
      ratio = env / lead_mod;
    }
    running = std::max(running, ratio);
    if (!(running < limit)) break;
    floor = std::exp(lr);
  }
  return floor;
}

ZeroCountReport count_zeros_unit(const JSeries& sigma, const ScanOptions& opts) {
  require_real(sigma);
  if (numerically_zero(sigma)) {
    ZeroCountReport rep;
    rep.certified = sigma.exact();
    rep.note = "identically zero";
    return rep;
  }
  const double floor = zero_free_floor(sigma);
  if (floor <= 0.0) {
    ZeroCountReport rep = count_zeros_interval(sigma, 1e-12, 1.0, opts);
    rep.certified = false;
    rep.note = "no asymptotic floor; scanned [1e-12, 1]";
    return rep;
  }
  if (floor >= 1.0 - 1e-12) {
    ZeroCountReport rep;
    rep.certified = true;
    rep.floor = floor;
    rep.margin = std::numeric_limits<double>::infinity();
    return rep;
  }
  ZeroCountReport rep = count_zeros_interval(sigma, floor, 1.0, opts);
  rep.floor = floor;
  return rep;
}

Complex petrov_numeric(const JSeries& sigma, double kappa, double t) {
  const Complex minus = jseries_eval(sigma, {t, -kappa}).value;
  const Complex plus = jseries_eval(sigma, {t, kappa}).value;
  return (minus - plus) / Complex(0.0, 2.0);
}

double arg_increment_arc(const JSeries& sigma, double radius, double kappa) {
  const auto g = [&](double phi) -> std::pair<Complex, double> {
    const EvalResult r = jseries_eval(sigma, {radius, kappa * phi});
    return {r.value, r.error()};
  };
  const PhaseTrace tr = trace_phase(g, -1.0, 1.0, 64);
  if (!(tr.margin > 0.0) || !tr.resolved) {
    fail(ErrorCode::ZeroOnContour, "|f| falls below its error bound on the arc");
  }
  return tr.increment;
}

double delta_zero(const JSeries& sigma, double kappa) {
  const auto lead = leading_term(sigma);
  if (!lead) fail(ErrorCode::DegenerateLeadingTerm, "all asymptotic coefficients vanish");
  return 2.0 * kappa * lead->alpha;
}

ZeroCountReport argument_principle_count(const JSeries& sigma,
                                         const SectorContour& c) {
  if (!(c.kappa > 0.0 && c.kappa <= kPi)) {
    fail(ErrorCode::Domain, "sector half-angle must lie in (0, pi]");
  }
  if (!(c.epsilon_inner > 0.0 && c.epsilon_inner < c.outer_radius &&
        c.outer_radius <= 1.0)) {
    fail(ErrorCode::Domain, "need 0 < epsilon_inner < outer_radius <= 1");
  }
  const auto at = [&](double mod, double arg) -> std::pair<Complex, double> {
    const EvalResult r = jseries_eval(sigma, {mod, arg});
    return {r.value, r.error()};
  };
  const double lo = std::log(c.epsilon_inner);
  const double hi = std::log(c.outer_radius);
  const PhaseTrace pieces[] = {
      trace_phase([&](double u) { return at(c.outer_radius, u); }, -c.kappa, c.kappa),
      trace_phase([&](double u) { return at(std::exp(u), c.kappa); }, hi, lo),
      trace_phase([&](double u) { return at(c.epsilon_inner, u); }, c.kappa, -c.kappa),
      trace_phase([&](double u) { return at(std::exp(u), -c.kappa); }, lo, hi),
  };
  double total = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  bool resolved = true;
  for (const auto& p : pieces) {
    total += p.increment;
    margin = std::min(margin, p.margin);
    resolved = resolved && p.resolved;
  }
  if (!(margin > 0.0)) {
    fail(ErrorCode::ZeroOnContour, "|f| falls below its error bound on the sector boundary");
  }
  const double w = total / (2.0 * kPi);
  ZeroCountReport rep;
  rep.method = CountMethod::ArgumentPrinciple;
  rep.count = static_cast<int>(std::lround(w));
  rep.margin = margin;
  rep.certified = resolved && std::abs(w - rep.count) < 0.05 && rep.count >= 0;
  rep.floor = c.epsilon_inner;
  if (!rep.certified) rep.note = "winding number not near an integer";
  return rep;
}

std::string_view to_string(PetrovStatus status) {
  switch (status) {
    case PetrovStatus::Holds: return "holds";
    case PetrovStatus::Violated: return "violated";
    case PetrovStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PetrovCheck verify_petrov(const JSeries& sigma, double kappa) {
  require_real(sigma);
  PetrovCheck out;
  const auto inconclusive = [&](const std::string& why) {
    out.status = PetrovStatus::Inconclusive;
    out.note = why;
    return out;
  };
  try {
    const ZeroCountReport nf = count_zeros_unit(sigma);
    out.n_f = nf.count;
    if (!nf.certified) return inconclusive("N(f) not certified");
    const JSeries pf = petrov_series(sigma, kappa);
    if (numerically_zero(pf)) {
      out.pf_zero = true;
      out.n_pf = 0;
    } else {
      const ZeroCountReport npf = count_zeros_unit(pf);
      out.n_pf = npf.count;
      if (!npf.certified) return inconclusive("N(P f) not certified");
    }
    out.delta1 = arg_increment_arc(sigma, 1.0, kappa);
    out.delta0 = delta_zero(sigma, kappa);
  } catch (const Error& e) {
    return inconclusive(std::string(to_string(e.code())) + ": " + e.what());
  }
  out.rhs = 1.0 + out.n_pf + (out.delta1 - out.delta0) / (2.0 * kPi);
  out.rhs_literal = 1.0 + out.n_pf + (out.delta1 + out.delta0) / (2.0 * kPi);
  out.holds = out.n_f <= out.rhs + 1e-9;
  out.literal_holds = out.n_f <= out.rhs_literal + 1e-9;
  out.status = out.holds ? PetrovStatus::Holds : PetrovStatus::Violated;
  return out;
}

}  // namespace pseudoabel
