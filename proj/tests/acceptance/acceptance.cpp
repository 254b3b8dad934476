// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gen.hpp"
#include "oracle.hpp"
#include "pseudoabel/asymptotics.hpp"
#include "pseudoabel/foliation.hpp"
#include "pseudoabel/io.hpp"
#include "pseudoabel/mellin.hpp"
#include "pseudoabel/sweep.hpp"
#include "pseudoabel/zerocount.hpp"

using namespace pseudoabel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::uint64_t g_seed = 0;

std::mt19937_64 rng_for(int criterion) { return gen::rng(g_seed * 1000 + criterion); }

const Box kBox{-0.1, 1.1, -0.1, 1.1};

DarbouxSystem triangle(double l3) {
  return DarbouxSystem({Polynomial2{{1, 0, 1.0}}, Polynomial2{{0, 1, 1.0}},
                        Polynomial2{{0, 0, 1.0}, {1, 0, -1.0}, {0, 1, -1.0}}},
                       {1.0, 1.0, l3}, kBox);
}

AdmissibleForm x_dy() {
  AdmissibleForm w;
  w.B = Polynomial2{{1, 0, 1.0}};
  w.denom_powers = {0, 0, 0};
  return w;
}

Outcome compensator_stability() {
  auto r = rng_for(1);
  const double gaps[] = {0.0, 1e-12, 1e-6};
  double worst = 0.0;
  double lib_time = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int p = gen::integer(r, 1, 16);
    const int q = gen::integer(r, 1, 16);
    const double lambda = gen::uniform(r, 0.3, 3.0);
    double mu = gen::uniform(r, 0.3, 3.0);
    // Every other case sits at or next to resonance.
    if (k % 2 == 0) mu = q / (p / lambda - gaps[(k / 2) % 3]);
    const SectorPoint pt{gen::uniform(r, 1e-4, 0.999), k % 4 == 1 ? gen::uniform(r, -1.0, 1.0) : 0.0};
    const auto t0 = Clock::now();
    const Complex v = compensator_eval(p, q, lambda, mu, pt);
    lib_time += seconds_since(t0);
    const Complex ref = oracle::ell(p, q, lambda, mu, pt.modulus, pt.argument);
    worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
  }
  return {worst <= 1e-12 && lib_time < 5.0, fmt("max rel err %.2e, %.3f s", worst, lib_time)};
}

Outcome mellin_round_trip() {
  auto r = rng_for(2);
  const auto t0 = Clock::now();
  double worst = 0.0;  // error minus allowance
  double max_err = 0.0;
  for (int k = 0; k < 50; ++k) {
    const JSeries s = gen::series(r, k % 2 == 0);
    const MellinRep g = mellin_forward(s);
    const ContourSpec c = default_contour(g, 1e-8);
    for (double t : gen::t_grid()) {
      const EvalResult e = jseries_eval(s, real_point(t));
      const double err = std::abs(inverse_mellin(g, t, c).value - e.value);
      max_err = std::max(max_err, err);
      worst = std::max(worst, err - (1e-8 + e.tail_bound));
    }
  }
  const double dt = seconds_since(t0);
  return {worst <= 0.0 && dt < 60.0, fmt("max err %.2e, %.1f s", max_err, dt)};
}

Outcome shift_identity() {
  auto r = rng_for(3);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const JSeries s = gen::series(r, k % 2 == 0);
    for (double kappa : {0.1, 0.5}) {
      const JSeries rs = rotate_series(s, kappa);
      for (double t : gen::t_grid()) {
        worst = std::max(worst, std::abs(jseries_value(rs, real_point(t)) - jseries_value(s, {t, kappa})));
      }
    }
  }
  return {worst <= 1e-8, fmt("max err %.2e", worst)};
}

Outcome petrov_duality() {
  auto r = rng_for(4);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const JSeries s = gen::series(r, true);
    const double kappa = kPi * s.spectrum[s.spectrum.size() - 1];
    const JSeries ps = petrov_series(s, kappa);
    for (double t : gen::t_grid()) {
      worst = std::max(worst, std::abs(jseries_value(ps, real_point(t)) - petrov_numeric(s, kappa, t)));
    }
  }
  return {worst <= 1e-9, fmt("max err %.2e", worst)};
}

Outcome reduction() {
  auto r = rng_for(5);
  int good = 0;
  double ratio = 0.0;
  for (int k = 0; k < 50; ++k) {
    // Random tails, no double pole on the diagonal.
    const JSeries s = gen::series(r, k % 2 == 0, false, false);
    ReductionOptions o;
    o.throw_on_residual = false;
    const ReductionReport rep = reduction_chain(s, o);
    // After the last pass on progression k only 0..k-1 survive.
    bool shrink = true;
    for (std::size_t st = 0; st < rep.steps.size(); ++st) {
      const bool last = st + 1 == rep.steps.size() ||
                        rep.steps[st + 1].progression != rep.steps[st].progression;
      if (!last) continue;
      std::vector<int> expect;
      for (int v = 0; v < rep.steps[st].progression; ++v) expect.push_back(v);
      if (rep.steps[st].surviving != expect) shrink = false;
    }
    if (rep.tolerance > 0.0) ratio = std::max(ratio, rep.final_residual / rep.tolerance);
    if (rep.ok && shrink && rep.final_residual <= rep.tolerance) ++good;
  }
  return {good == 50, fmt("%g/50 ok, max residual/(10 x tail) %.2e", good, ratio)};
}

Outcome petrov_inequality() {
  auto r = rng_for(6);
  int violated = 0;
  int conclusive = 0;
  for (int k = 0; k < 100; ++k) {
    // Finite sums: a random tail hides the leading coefficient and no count can be certified.
    const JSeries s = gen::series(r, true, true);
    const PetrovCheck pc = verify_petrov(s, kPi * s.spectrum[s.spectrum.size() - 1]);
    if (pc.status == PetrovStatus::Violated) ++violated;
    if (pc.status == PetrovStatus::Holds) ++conclusive;
  }
  return {violated == 0 && conclusive >= 95, fmt("%g violated, %g/100 conclusive", violated, conclusive)};
}

Outcome area_limit() {
  const auto one = [](double l3, double rel_level, double tol, std::string& out) {
    const auto t0 = Clock::now();
    const DarbouxSystem s = triangle(l3);
    const double tc = find_center(s, {0.3, 0.3}).t_center;
    const Oval ov = trace_oval(s, rel_level * tc);
    const double I = integrate_form(s, ov, x_dy()).value;
    const double dt = seconds_since(t0);
    out += fmt("|I-0.5| %.2e in %.2f s; ", std::abs(I - 0.5), dt);
    return std::abs(I - 0.5) <= tol && dt < 30.0;
  };
  std::string d;
  bool ok = true;
  try {
    ok = one(1.0, 1e-3, 0.02, d) && ok;
    ok = one(std::sqrt(2.0), 1e-3, 0.03, d) && ok;
  } catch (const Error& e) {
    return {false, d + e.what()};
  }
  return {ok, d};
}

Outcome green_cross_check() {
  const DarbouxSystem s = triangle(1.0);
  double worst = 0.0;
  for (double f : {0.2, 0.5, 0.8}) {
    const double t = f / 27;
    const double I = integrate_form(s, trace_oval(s, t), x_dy()).value;
    const double A = oracle::triangle_area(t);
    worst = std::max(worst, std::abs(I - A) / A);
  }
  return {worst <= 1e-4, fmt("max rel err %.2e", worst)};
}

Outcome corner_formula() {
  const std::pair<double, double> exps[] = {{1.0, 1.0}, {1.0, std::sqrt(2.0)}, {0.7, 1.9}, {2.5, 1.25}, {1.3, 0.6}};
  double worst = 0.0;
  int points = 0;
  for (int p = 1; p <= 5; ++p) {
    for (int q = 0; q <= 3; ++q) {
      for (const auto& [lambda, mu] : exps) {
        for (double t : {1e-3, 0.2}) {
          const double closed = corner_monomial_integral(p, q, lambda, mu, t);
          const double ref = oracle::corner_quadrature(p, q, lambda, mu, t);
          worst = std::max(worst, std::abs(closed - ref) / std::max(1.0, std::abs(ref)));
          ++points;
        }
      }
    }
  }
  return {worst <= 1e-8 && points == 200, fmt("%g points, max err %.2e", points, worst)};
}

Outcome fixture_counts() {
  std::string d;
  bool ok = true;
  const std::pair<const char*, int> cases[] = {{"one_zero.json", 1}, {"two_zero.json", 2}};
  for (const auto& [name, expected] : cases) {
    const JSeries s = parse_series(read_file(std::string(PSEUDOABEL_DATA_DIR) + "/" + name));
    const ZeroCountReport scan = count_zeros_unit(s);
    SectorContour c;
    const double floor = zero_free_floor(s);
    if (floor > 0.0) c.epsilon_inner = std::clamp(floor, 1e-8, 0.01);
    const ZeroCountReport ap = argument_principle_count(s, c);
    ok = ok && scan.certified && ap.certified && scan.count == expected && ap.count == expected;
    d += std::string(name) + fmt(": scan %g, argument %g; ", scan.count, ap.count);
  }
  return {ok, d};
}

Outcome quasianalyticity() {
  auto r = rng_for(11);
  const JSeries s = gen::series(r, true, true);
  const double A = gen::uniform(r, 1.0, 3.0);
  const PartialSum ps = asymptotic_partial_sum(s, A);
  const double ts[] = {1e-4, 1e-3, 1e-2, 1e-1};
  bool bounded = true;
  double worst = 0.0;
  for (double t : ts) {
    const EvalResult e = jseries_eval(s, real_point(t));
    const double diff = std::abs(e.value - ps.evaluate(t));
    // The envelope bounds the exact difference; e.error() covers evaluation rounding.
    if (diff > ps.envelope(t) + e.error()) bounded = false;
    worst = std::max(worst, diff / (ps.envelope(t) + e.error()));
  }
  // Local log-log slope per decade: at least cut - 2/|log t|, the log powers
  // in the envelope being at most 2.
  bool decays = true;
  double min_excess = 1e300;
  for (int k = 0; k + 1 < 4; ++k) {
    const double e0 = ps.envelope(ts[k]);
    const double e1 = ps.envelope(ts[k + 1]);
    if (e0 == 0.0 && e1 == 0.0) continue;
    const double slope = std::log(e1 / e0) / std::log(ts[k + 1] / ts[k]);
    const double excess = slope - (ps.cut - 2.0 / std::abs(std::log(ts[k + 1])));
    min_excess = std::min(min_excess, excess);
    if (excess < -1e-9) decays = false;
  }
  return {bounded && decays,
          fmt("cut %.3f, max diff/envelope %.2e, min slope excess %.2e", ps.cut, worst, min_excess)};
}

Outcome sweep_stability() {
  const JSeries s = parse_series(read_file(std::string(PSEUDOABEL_DATA_DIR) + "/one_zero.json"));
  const SweepResult res = sweep_zero_counts(default_sweep(s), s);
  bool ok = res.rows.size() == 9 && res.flagged == 0;
  for (const auto& row : res.rows) ok = ok && row.certified && row.count == res.rows.front().count;
  return {ok, fmt("%g points, N = %g, %g flagged", res.rows.size(), res.max_count, res.flagged)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  app.add_option("--seed", g_seed, "seed for the random suites");
  CLI11_PARSE(app, argc, argv);

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"compensator stability", compensator_stability},
      {"Mellin round trip", mellin_round_trip},
      {"shift identity", shift_identity},
      {"Petrov duality", petrov_duality},
      {"reduction chain", reduction},
      {"Petrov inequality", petrov_inequality},
      {"foliation area limit", area_limit},
      {"Green's theorem cross-check", green_cross_check},
      {"corner formula", corner_formula},
      {"zero-count fixtures", fixture_counts},
      {"quasianalyticity probe", quasianalyticity},
      {"sweep stability", sweep_stability},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%-2d %-28s %s  %s\n", index, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
