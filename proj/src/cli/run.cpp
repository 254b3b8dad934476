#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <omp.h>

#include "json.hpp"
#include "pseudoabel/asymptotics.hpp"
#include "pseudoabel/cli.hpp"
#include "pseudoabel/io.hpp"
#include "pseudoabel/random.hpp"

namespace pseudoabel {

using nlohmann::json;

namespace {

struct CommandName {
  Command c;
  std::string_view name;
};

constexpr CommandName kCommands[] = {
    {Command::EvalSeries, "eval-series"},   {Command::MellinTable, "mellin-table"},
    {Command::InvertMellin, "invert-mellin"}, {Command::Petrov, "petrov"},
    {Command::Reduce, "reduce"},            {Command::CountZeros, "count-zeros"},
    {Command::VerifyPetrov, "verify-petrov"}, {Command::TraceOval, "trace-oval"},
    {Command::Integrate, "integrate"},      {Command::Sweep, "sweep"},
};

[[noreturn]] void config(const std::string& msg) { fail(ErrorCode::Config, msg); }

bool series_command(Command c) {
  return c != Command::TraceOval && c != Command::Integrate && c != Command::InvertMellin;
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& e : kCommands) {
    if (e.c == c) return e.name;
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& e : kCommands) {
    if (e.name == name) return e.c;
  }
  return std::nullopt;
}

SweepAxis parse_sweep_axis(std::string_view spec) {
  std::vector<std::string> parts;
  std::stringstream ss{std::string(spec)};
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 5) config("sweep axis must be kind:index:lo:hi:n");
  SweepAxis ax;
  if (parts[0] == "exponent") {
    ax.kind = SweepAxis::Kind::Exponent;
  } else if (parts[0] == "coef") {
    ax.kind = SweepAxis::Kind::Coefficient;
  } else {
    config("unknown sweep axis kind '" + parts[0] + "'");
  }
  try {
    std::size_t used = 0;
    ax.index = std::stoi(parts[1], &used);
    ax.lo = std::stod(parts[2]);
    ax.hi = std::stod(parts[3]);
    ax.points = std::stoi(parts[4]);
  } catch (const std::exception&) {
    config("malformed sweep axis '" + std::string(spec) + "'");
  }
  if (ax.points < 1 || ax.index < 0 || !(ax.lo <= ax.hi)) config("invalid sweep axis range");
  return ax;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.input.empty()) config("--input is required");
  const bool random = cfg.input == "random" || cfg.input == "random-real";
  if (random && !series_command(cfg.command)) {
    config("generated input is only available for series commands");
  }
  if (!random) {
    std::ifstream probe(cfg.input);
    if (!probe) config("input file '" + cfg.input + "' does not exist");
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) config("--tol must be positive");
  if (cfg.threads < 0) config("--threads must be nonnegative");
  if (cfg.kappa && !std::isfinite(*cfg.kappa)) config("--kappa must be finite");
  if (cfg.command == Command::TraceOval && !cfg.t) config("trace-oval needs --t");
  if (cfg.method != "scan" && cfg.method != "argument" && cfg.method != "both") {
    config("--method must be scan, argument or both");
  }
  (void)parse_t_grid(cfg.t_grid);
}

namespace {

JSeries load_series(const RunConfig& cfg) {
  if (cfg.input == "random" || cfg.input == "random-real") {
    std::mt19937_64 rng(cfg.seed);
    RandomSeriesOptions o;
    o.real = cfg.input == "random-real";
    return random_series(rng, o);
  }
  const std::string text = read_file(cfg.input);
  if (cfg.schema_check) check_schema(text);
  const std::string kind = document_kind(text);
  if (kind == "mellin") return mellin_to_series(parse_mellin(text));
  if (kind != "jseries") config("expected a jseries document");
  return parse_series(text);
}

MellinRep load_mellin(const RunConfig& cfg) {
  const std::string text = read_file(cfg.input);
  if (cfg.schema_check) check_schema(text);
  const std::string kind = document_kind(text);
  if (kind == "jseries") return mellin_forward(parse_series(text));
  if (kind != "mellin") config("expected a mellin or jseries document");
  return parse_mellin(text);
}

SystemInput load_system(const RunConfig& cfg) {
  const std::string text = read_file(cfg.input);
  if (cfg.schema_check) check_schema(text);
  return parse_system(text);
}

json report_json(const ZeroCountReport& r) {
  json zs = json::array();
  for (const auto& z : r.zeros) {
    zs.push_back({{"location", z.location},
                  {"multiplicity", z.multiplicity},
                  {"residual_margin", z.residual_margin}});
  }
  json fl = json::array();
  for (const auto& [a, b] : r.flagged) fl.push_back({a, b});
  return {{"count", r.count},   {"certified", r.certified}, {"method", to_string(r.method)},
          {"margin", r.margin}, {"floor", r.floor},         {"zeros", zs},
          {"flagged", fl},      {"note", r.note}};
}

json petrov_json(const PetrovCheck& p) {
  return {{"n_f", p.n_f},          {"n_pf", p.n_pf},
          {"delta1", p.delta1},    {"delta0", p.delta0},
          {"rhs", p.rhs},          {"rhs_literal", p.rhs_literal},
          {"holds", p.holds},      {"literal_holds", p.literal_holds},
          {"pf_zero", p.pf_zero},  {"status", to_string(p.status)},
          {"note", p.note}};
}

json with_schema(json j) {
  j["schema"] = kSchema;
  return j;
}

double default_kappa(const JSeries& s) {
  if (s.spectrum.empty()) return kPi;
  return kPi * s.spectrum[s.spectrum.size() - 1];
}

void run_series(const RunConfig& cfg, std::ostream& out) {
  const JSeries s = load_series(cfg);
  switch (cfg.command) {
    case Command::EvalSeries: {
      const auto ts = parse_t_grid(cfg.t_grid);
      const double arg = cfg.kappa.value_or(0.0);
      const auto vals = eval_grid(s, ts, arg);
      out << "t,re,im,err\n";
      for (std::size_t k = 0; k < ts.size(); ++k) {
        out << fmt(ts[k]) << ',' << fmt(vals[k].value.real()) << ','
            << fmt(vals[k].value.imag()) << ',' << fmt(vals[k].error()) << '\n';
      }
      return;
    }
    case Command::MellinTable: {
      const MellinRep g = mellin_forward(s);
      json pp = json::array();
      for (const auto& p : principal_parts(g)) {
        const double err = 4.0 * kEps * (std::abs(p.c2) + std::abs(p.c1));
        pp.push_back({{"location", p.location},
                      {"c2", {p.c2.real(), p.c2.imag()}},
                      {"c1", {p.c1.real(), p.c1.imag()}},
                      {"err", err}});
      }
      json j = json::parse(mellin_to_json(g));
      j["principal_parts"] = pp;
      out << j.dump(2) << '\n';
      return;
    }
    case Command::Petrov: {
      KernelStats st;
      const JSeries p = petrov_series(s, cfg.kappa.value_or(default_kappa(s)),
                                      {.snap_zeros = true, .target = std::nullopt}, &st);
      json j = json::parse(series_to_json(p));
      j["snapped"] = st.snapped;
      j["max_snapped"] = st.max_snapped;
      out << j.dump(2) << '\n';
      return;
    }
    case Command::Reduce: {
      ReductionOptions o;
      o.zero_counts = s.is_real();
      const ReductionReport r = reduction_chain(s, o);
      json steps = json::array();
      for (const auto& st : r.steps) {
        steps.push_back({{"progression", st.progression},
                         {"kappa", st.kappa},
                         {"terms", st.series.a.size() + st.series.b.size()},
                         {"surviving", st.surviving},
                         {"snapped", st.stats.snapped},
                         {"max_snapped", st.stats.max_snapped},
                         {"status", st.status},
                         {"n_before", st.n_before},
                         {"n_after", st.n_after},
                         {"delta1", st.delta1},
                         {"delta0", st.delta0},
                         {"bound", st.bound}});
      }
      out << with_schema({{"steps", steps},
                          {"final_residual", r.final_residual},
                          {"tolerance", r.tolerance},
                          {"final_empty", r.final_empty},
                          {"bookkeeping_ok", r.bookkeeping_ok},
                          {"ok", r.ok}})
                 .dump(2)
          << '\n';
      return;
    }
    case Command::CountZeros: {
      json j;
      if (cfg.method == "scan" || cfg.method == "both") {
        j["sign_scan"] = report_json(count_zeros_unit(s));
      }
      if (cfg.method == "argument" || cfg.method == "both") {
        SectorContour c;
        c.kappa = cfg.kappa.value_or(c.kappa);
        const double floor = zero_free_floor(s);
        if (floor > 0.0) c.epsilon_inner = std::clamp(floor, 1e-8, 0.01);
        json r = report_json(argument_principle_count(s, c));
        r["epsilon_inner"] = c.epsilon_inner;
        r["kappa"] = c.kappa;
        j["argument_principle"] = r;
      }
      const json& first = j.contains("sign_scan") ? j["sign_scan"] : j["argument_principle"];
      j["count"] = first["count"];
      j["certified"] = first["certified"];
      out << with_schema(j).dump(2) << '\n';
      return;
    }
    case Command::VerifyPetrov: {
      const double kappa = cfg.kappa.value_or(default_kappa(s));
      json j = petrov_json(verify_petrov(s, kappa));
      j["kappa"] = kappa;
      out << with_schema(j).dump(2) << '\n';
      return;
    }
    case Command::Sweep: {
      SweepSpec spec = default_sweep(s);
      if (!cfg.sweep_axes.empty()) spec.axes = cfg.sweep_axes;
      const SweepResult r = sweep_zero_counts(spec, s);
      out << "point";
      for (std::size_t k = 0; k < spec.axes.size(); ++k) out << ",nu" << k;
      out << ",count,certified,margin,n_pf,delta1,delta0,petrov_status,status\n";
      for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const SweepRow& row = r.rows[k];
        out << k;
        for (double v : row.nu) out << ',' << fmt(v);
        out << ',' << row.count << ',' << (row.certified ? 1 : 0) << ',' << fmt(row.margin)
            << ',' << row.n_pf << ',' << fmt(row.delta1) << ',' << fmt(row.delta0) << ','
            << row.petrov_status << ',' << row.status << '\n';
      }
      out << "# max_count=" << r.max_count << " flagged=" << r.flagged << '\n';
      return;
    }
    default:
      config("not a series command");
  }
}

void run_other(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::InvertMellin: {
      const MellinRep g = load_mellin(cfg);
      const auto ts = parse_t_grid(cfg.t_grid);
      const ContourSpec c = default_contour(g, cfg.tol.value_or(1e-8));
      const JSeries back = mellin_to_series(g);
      out << "t,re,im,est_error\n";
      for (double t : ts) {
        const QuadResult r = inverse_mellin(g, t, c);
        const double tb = tail_bound(back, real_point(t));
        out << fmt(t) << ',' << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ','
            << fmt(r.error + tb) << '\n';
      }
      return;
    }
    case Command::TraceOval: {
      const SystemInput in = load_system(cfg);
      TraceOptions o;
      if (cfg.tol) o.level_tol_rel = *cfg.tol;
      const Oval ov = trace_oval(in.system, *cfg.t, o);
      out << "x,y,residual\n";
      for (std::size_t k = 0; k < ov.points.size(); ++k) {
        out << fmt(ov.points[k].x) << ',' << fmt(ov.points[k].y) << ','
            << fmt(ov.residuals[k]) << '\n';
      }
      return;
    }
    case Command::Integrate: {
      const SystemInput in = load_system(cfg);
      if (!in.omega) config("integrate needs an omega entry in the system file");
      TraceOptions o;
      if (cfg.tol) o.level_tol_rel = *cfg.tol;
      const auto ts = parse_t_grid(cfg.t_grid);
      const auto samples = integral_scan(in.system, *in.omega, ts, o);
      out << "t,I,err,traceStatus\n";
      for (const auto& s : samples) {
        out << fmt(s.t) << ',' << fmt(s.value) << ',' << fmt(s.error) << ',' << s.status << '\n';
      }
      return;
    }
    default:
      config("unknown command");
  }
}

void error_report(std::ostream& err, const Error& e) {
  err << with_schema({{"status", "error"}, {"code", to_string(e.code())}, {"message", e.what()}})
             .dump()
      << '\n';
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate_config(cfg);
    int threads = cfg.threads;
    if (threads == 0) {
      if (const char* env = std::getenv("PSEUDOABEL_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) omp_set_num_threads(threads);

    std::ostringstream buf;
    if (cfg.schema_check) {
      // Parse only: the input must load for this command.
      if (series_command(cfg.command)) {
        (void)load_series(cfg);
      } else if (cfg.command == Command::InvertMellin) {
        (void)load_mellin(cfg);
      } else {
        (void)load_system(cfg);
      }
      buf << with_schema({{"status", "ok"}, {"input", cfg.input}}).dump() << '\n';
    } else if (series_command(cfg.command)) {
      run_series(cfg, buf);
    } else {
      run_other(cfg, buf);
    }
    if (cfg.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) config("cannot write '" + cfg.output + "'");
      f << buf.str();
    }
    return 0;
  } catch (const Error& e) {
    error_report(err, e);
    return e.code() == ErrorCode::Config ? 1 : 2;
  } catch (const std::exception& e) {
    err << with_schema({{"status", "error"}, {"code", "InternalError"}, {"message", e.what()}})
               .dump()
        << '\n';
    return 2;
  }
}

}  // namespace pseudoabel
