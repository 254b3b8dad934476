#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gen.hpp"
#include "json.hpp"
#include "pseudoabel/cli.hpp"
#include "pseudoabel/io.hpp"

using namespace pseudoabel;

namespace {

std::string data(const char* name) { return std::string(PSEUDOABEL_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(RunConfig cfg) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig cfg(Command c, const std::string& input) {
  RunConfig r;
  r.command = c;
  r.input = input;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = (std::filesystem::temp_directory_path() / ("pseudoabel_" + name)).string();
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("series JSON round trip is bit exact") {
  auto r = gen::rng(51);
  for (int k = 0; k < 30; ++k) {
    JSeries s = gen::series(r, k % 2 == 0, k % 3 == 0);
    if (s.tail) s.tail->shifts.push_back({0.5, 0.1 * k});
    const JSeries back = parse_series(series_to_json(s));
    CHECK(back.spectrum == s.spectrum);
    CHECK(back.C == s.C);
    CHECK(back.exact() == s.exact());
    REQUIRE(back.a.size() == s.a.size());
    REQUIRE(back.b.size() == s.b.size());
    for (std::size_t n = 0; n < s.a.size(); ++n) CHECK(back.a[n].coef == s.a[n].coef);
    for (std::size_t n = 0; n < s.b.size(); ++n) CHECK(back.b[n].coef == s.b[n].coef);
    if (s.tail) {
      REQUIRE(back.tail->shifts.size() == s.tail->shifts.size());
      CHECK(back.tail->shifts.back().angle == s.tail->shifts.back().angle);
    }
    const MellinRep g = mellin_forward(s);
    const MellinRep gb = parse_mellin(mellin_to_json(g));
    REQUIRE(gb.doubles.size() == g.doubles.size());
    for (std::size_t n = 0; n < g.doubles.size(); ++n) CHECK(gb.doubles[n].coef == g.doubles[n].coef);
  }
  CHECK_THROWS_AS(parse_series("{\"spectrum\": [1.0], \"b\": [{\"r\": 1, \"i\": 3, \"re\": 1}]}"), Error);
  CHECK_THROWS_AS(parse_series("{not json"), Error);
}

TEST_CASE("t grids") {
  const auto g = parse_t_grid("geometric:0.01:1:3");
  REQUIRE(g.size() == 3);
  CHECK(g[1] == doctest::Approx(0.1));
  CHECK(g[2] == 1.0);
  CHECK(parse_t_grid("linear:0.1:0.5:5")[2] == doctest::Approx(0.3));
  CHECK(parse_t_grid("0.2,0.4").size() == 2);
  CHECK_THROWS_AS(parse_t_grid("geometric:0:1:3"), Error);
  CHECK_THROWS_AS(parse_t_grid("linear:0.1:0.5:0"), Error);
  CHECK_THROWS_AS(parse_t_grid("spiral:1:2:3"), Error);
  CHECK_THROWS_AS(parse_t_grid(""), Error);
}

TEST_CASE("eval-series") {
  RunConfig c = cfg(Command::EvalSeries, data("monomial_t.json"));
  c.t_grid = "0.5";
  const Run r = run(c);
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "t,re,im,err");
  CHECK(row.rfind("0.5,0.5,0,", 0) == 0);
  CHECK(std::stod(row.substr(row.rfind(',') + 1)) <= 1e-14);
}

TEST_CASE("reduce, count-zeros, verify-petrov reports") {
  const Run red = run(cfg(Command::Reduce, data("reduce_n2.json")));
  REQUIRE(red.code == 0);
  const auto j = nlohmann::json::parse(red.out);
  CHECK(j["schema"] == "pseudoabel/1");
  CHECK(j["ok"] == true);
  CHECK(j["final_residual"].get<double>() <= j["tolerance"].get<double>());

  RunConfig cz = cfg(Command::CountZeros, data("one_zero.json"));
  cz.method = "both";
  const Run z = run(cz);
  REQUIRE(z.code == 0);
  const auto jz = nlohmann::json::parse(z.out);
  CHECK(jz["count"] == 1);
  CHECK(jz["sign_scan"]["count"] == 1);
  CHECK(jz["argument_principle"]["count"] == 1);

  RunConfig vp = cfg(Command::VerifyPetrov, data("one_zero.json"));
  vp.kappa = 0.3;
  const Run v = run(vp);
  REQUIRE(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["holds"] == true);
}

TEST_CASE("mellin-table, invert-mellin, petrov") {
  const Run mt = run(cfg(Command::MellinTable, data("reduce_n2.json")));
  REQUIRE(mt.code == 0);
  const auto j = nlohmann::json::parse(mt.out);
  CHECK(j["kind"] == "mellin");
  CHECK(j["poles"]["double"].size() == 1);
  const std::string rep = write_temp("rep.json", mt.out);
  RunConfig im = cfg(Command::InvertMellin, rep);
  im.t_grid = "0.3,0.6";
  const Run inv = run(im);
  REQUIRE(inv.code == 0);
  CHECK(inv.out.rfind("t,re,im,est_error\n", 0) == 0);
  RunConfig pe = cfg(Command::Petrov, data("one_zero.json"));
  pe.kappa = 0.4;
  const Run p = run(pe);
  REQUIRE(p.code == 0);
  CHECK(nlohmann::json::parse(p.out)["kind"] == "jseries");
  std::remove(rep.c_str());
}

TEST_CASE("trace-oval and integrate") {
  RunConfig to = cfg(Command::TraceOval, data("triangle.json"));
  to.t = 0.5 / 27;
  const Run r = run(to);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x,y,residual\n", 0) == 0);
  RunConfig in = cfg(Command::Integrate, data("triangle.json"));
  in.t_grid = "geometric:3.7e-6:0.03:4";
  const Run i = run(in);
  REQUIRE(i.code == 0);
  CHECK(i.out.find(",ok\n") != std::string::npos);
  // Level above the center: numerical failure with a JSON report.
  to.t = 0.1;
  const Run bad = run(to);
  CHECK(bad.code == 2);
  CHECK(nlohmann::json::parse(bad.err)["code"] == "DomainError");
}

TEST_CASE("config errors exit with 1") {
  CHECK(run(cfg(Command::EvalSeries, data("missing.json"))).code == 1);
  RunConfig c = cfg(Command::EvalSeries, data("monomial_t.json"));
  c.t_grid = "linear:1:2:0";
  CHECK(run(c).code == 1);
  c = cfg(Command::TraceOval, data("triangle.json"));
  CHECK(run(c).code == 1);  // no --t
  c = cfg(Command::EvalSeries, data("monomial_t.json"));
  c.tol = -1.0;
  CHECK(run(c).code == 1);
  const std::string bad = write_temp("bad_schema.json", "{\"schema\": \"other/9\", \"spectrum\": [1]}");
  c = cfg(Command::EvalSeries, bad);
  c.schema_check = true;
  const Run r = run(c);
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["code"] == "ConfigError");
  std::remove(bad.c_str());
  c = cfg(Command::EvalSeries, data("one_zero.json"));
  c.schema_check = true;
  CHECK(run(c).code == 0);
}

TEST_CASE("sweeps") {
  auto base = parse_series(read_file(data("one_zero.json")));
  const SweepResult r = sweep_zero_counts(default_sweep(base), base);
  CHECK(r.rows.size() == 9);
  CHECK(r.max_count == 1);
  CHECK(r.flagged == 0);
  for (const auto& row : r.rows) CHECK(row.count == 1);
  const SweepResult s = sweep_zero_counts_serial(default_sweep(base), base);
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    CHECK(r.rows[k].count == s.rows[k].count);
    CHECK(r.rows[k].margin == s.rows[k].margin);
  }

  JSeries zero = make_series(Spectrum({1.0, 2.0}), 0, 1.0, 3.0, 6, true);
  for (const auto& row : sweep_zero_counts(default_sweep(zero), zero).rows) CHECK(row.count == 0);

  // lambda_2 crosses 2.0 (rational ratio with lambda_1 = 1).
  JSeries cross = make_series(Spectrum({1.0, 1.96}), 0, 3.0, 3.0, 6, true);
  cross.b = {{1, 0, 1.0}, {1, 1, -0.5}, {2, 1, 0.2}};
  SweepSpec sp;
  sp.axes = {{SweepAxis::Kind::Exponent, 1, 0.0, 0.04, 9}};
  const SweepResult c = sweep_zero_counts(sp, cross);
  for (const auto& row : c.rows) {
    CHECK(row.status == "ok");
    CHECK(row.count == c.rows.front().count);
  }
}

TEST_CASE("deterministic output") {
  RunConfig c = cfg(Command::Sweep, data("one_zero.json"));
  const Run a = run(c);
  const Run b = run(c);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  RunConfig g = cfg(Command::EvalSeries, "random");
  g.seed = 7;
  CHECK(run(g).out == run(g).out);
  g.seed = 8;
  const std::string other = run(g).out;
  g.seed = 7;
  CHECK(run(g).out != other);
}

TEST_CASE("command line binary") {
  const std::string bin = PSEUDOABEL_CLI;
  const auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  CHECK(status(bin + " eval-series --input " + data("monomial_t.json") + " --t-grid 0.5") == 0);
  CHECK(status(bin + " eval-series --input " + data("nope.json")) == 1);
  CHECK(status(bin + " frobnicate") == 1);
  CHECK(status(bin + " sweep --input " + data("one_zero.json") + " --axis exponent:0:-0.01:0.01:3 --threads 2") == 0);
  CHECK(status(bin + " trace-oval --input " + data("triangle.json") + " --t 1") == 2);
}
