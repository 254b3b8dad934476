#include "pseudoabel/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pseudoabel {

using nlohmann::json;

namespace {

[[noreturn]] void config(const std::string& msg) { fail(ErrorCode::Config, msg); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    config(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    config(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) config(std::string("missing field '") + key + "'");
  return get<T>(j, key, T{});
}

json tail_json(const TailModel& t) {
  json shifts = json::array();
  for (const auto& s : t.shifts) shifts.push_back({{"weight", s.weight}, {"angle", s.angle}});
  return {{"C", t.C}, {"rho", t.rho}, {"m", t.m}, {"order", t.order}, {"shifts", shifts}};
}

TailModel tail_from(const json& j) {
  TailModel t;
  t.C = get(j, "C", t.C);
  t.rho = get(j, "rho", t.rho);
  t.m = get(j, "m", t.m);
  t.order = get(j, "order", t.order);
  if (j.contains("shifts")) {
    t.shifts.clear();
    for (const auto& s : j.at("shifts")) {
      t.shifts.push_back({get(s, "weight", 1.0), get(s, "angle", 0.0)});
    }
  }
  return t;
}

Complex coef_from(const json& t) { return {need<double>(t, "re"), get(t, "im", 0.0)}; }

Spectrum spectrum_from(const json& j) {
  try {
    return Spectrum(need<std::vector<double>>(j, "spectrum"));
  } catch (const Error& e) {
    config(e.what());
  }
}

}  // namespace

std::string series_to_json(const JSeries& s, int indent) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "jseries";
  j["spectrum"] = std::vector<double>(s.spectrum.values().begin(), s.spectrum.values().end());
  j["m"] = s.m;
  j["C"] = s.C;
  j["rho"] = s.rho;
  j["order"] = s.order;
  j["exact"] = s.exact();
  json a = json::array();
  for (const auto& t : s.a) {
    a.push_back({{"p", t.p}, {"q", t.q}, {"i", t.i}, {"j", t.j},
                 {"re", t.coef.real()}, {"im", t.coef.imag()}});
  }
  json b = json::array();
  for (const auto& t : s.b) {
    b.push_back({{"r", t.r}, {"i", t.i}, {"re", t.coef.real()}, {"im", t.coef.imag()}});
  }
  j["a"] = a;
  j["b"] = b;
  if (s.tail) j["tail"] = tail_json(*s.tail);
  return j.dump(indent);
}

JSeries parse_series(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) config("series document must be an object");
  const bool exact = get(j, "exact", false);
  JSeries s = make_series(spectrum_from(j), get(j, "m", 0), get(j, "C", 1.0),
                          get(j, "rho", 3.0), get(j, "order", 24), exact);
  if (!exact && j.contains("tail")) s.tail = tail_from(j.at("tail"));
  for (const auto& t : get(j, "a", json::array())) {
    s.a.push_back({need<int>(t, "p"), need<int>(t, "q"), need<int>(t, "i"), need<int>(t, "j"),
                   coef_from(t)});
  }
  for (const auto& t : get(j, "b", json::array())) {
    s.b.push_back({need<int>(t, "r"), need<int>(t, "i"), coef_from(t)});
  }
  canonicalize(s);
  try {
    validate(s);
  } catch (const Error& e) {
    config(e.what());
  }
  return s;
}

std::string mellin_to_json(const MellinRep& g, int indent) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "mellin";
  j["spectrum"] = std::vector<double>(g.spectrum.values().begin(), g.spectrum.values().end());
  j["m"] = g.m;
  j["C"] = g.C;
  j["rho"] = g.rho;
  j["order"] = g.order;
  j["exact"] = !g.tail.has_value();
  json d = json::array();
  for (const auto& t : g.doubles) {
    d.push_back({{"p", t.p}, {"q", t.q}, {"i", t.i}, {"j", t.j},
                 {"re", t.coef.real()}, {"im", t.coef.imag()}});
  }
  json s = json::array();
  for (const auto& t : g.simples) {
    s.push_back({{"r", t.r}, {"i", t.i}, {"re", t.coef.real()}, {"im", t.coef.imag()}});
  }
  j["poles"] = {{"double", d}, {"simple", s}};
  if (g.tail) j["tail"] = tail_json(*g.tail);
  return j.dump(indent);
}

MellinRep parse_mellin(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) config("mellin document must be an object");
  MellinRep g;
  g.spectrum = spectrum_from(j);
  g.m = get(j, "m", 0);
  g.C = get(j, "C", 1.0);
  g.rho = get(j, "rho", 3.0);
  g.order = get(j, "order", 24);
  if (!get(j, "exact", false)) {
    g.tail = j.contains("tail") ? tail_from(j.at("tail"))
                                : TailModel{g.C, g.rho, g.m, g.order, {TailShift{}}};
  }
  const json poles = get(j, "poles", json::object());
  for (const auto& t : get(poles, "double", json::array())) {
    g.doubles.push_back({need<int>(t, "p"), need<int>(t, "q"), need<int>(t, "i"),
                         need<int>(t, "j"), coef_from(t)});
  }
  for (const auto& t : get(poles, "simple", json::array())) {
    g.simples.push_back({need<int>(t, "r"), need<int>(t, "i"), coef_from(t)});
  }
  // Structural checks are shared with the series form.
  try {
    validate(mellin_to_series(g));
  } catch (const Error& e) {
    config(e.what());
  }
  return g;
}

std::string document_kind(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) return "";
  if (j.contains("kind")) return get<std::string>(j, "kind", "");
  if (j.contains("polys")) return "system";
  if (j.contains("poles")) return "mellin";
  if (j.contains("spectrum")) return "jseries";
  return "";
}

void check_schema(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("schema")) config("document has no schema field");
  if (get<std::string>(j, "schema", "") != kSchema) {
    config("unsupported schema '" + get<std::string>(j, "schema", "") + "'");
  }
}

namespace {

Polynomial2 poly_from(const json& j) {
  if (!j.is_array()) config("polynomial must be a list of [i, j, c] triples");
  std::vector<Monomial> ms;
  for (const auto& m : j) {
    if (!m.is_array() || m.size() != 3) config("monomial must be [i, j, c]");
    try {
      ms.push_back({m[0].get<int>(), m[1].get<int>(), m[2].get<double>()});
    } catch (const json::exception&) {
      config("monomial entries must be numbers");
    }
    if (ms.back().i < 0 || ms.back().j < 0) config("negative monomial degree");
  }
  return Polynomial2(ms);
}

}  // namespace

SystemInput parse_system(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) config("system document must be an object");
  std::vector<Polynomial2> polys;
  for (const auto& p : need<json>(j, "polys")) polys.push_back(poly_from(p));
  const auto exps = need<std::vector<double>>(j, "exponents");
  const auto bx = need<std::vector<double>>(j, "box");
  if (bx.size() != 4) config("box must be [xmin, xmax, ymin, ymax]");
  try {
    SystemInput in{DarbouxSystem(std::move(polys), exps, Box{bx[0], bx[1], bx[2], bx[3]}),
                   std::nullopt};
    if (j.contains("omega")) {
      const json& w = j.at("omega");
      AdmissibleForm f;
      f.A = w.contains("dx") ? poly_from(w.at("dx")) : Polynomial2();
      f.B = w.contains("dy") ? poly_from(w.at("dy")) : Polynomial2();
      f.denom_powers = get(w, "denomPowers", std::vector<int>(in.system.size(), 0));
      f.max_pole_order = get(w, "maxPoleOrder", -1);
      const auto rep = admissibility_check(in.system, f);
      if (!rep.admissible) config("omega is not admissible: " + rep.reason);
      in.omega = std::move(f);
    }
    return in;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    config(e.what());
  }
}

namespace {

double to_num(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end) config("not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || s[k] == sep) {
      out.push_back(s.substr(start, k - start));
      start = k + 1;
    }
  }
  return out;
}

}  // namespace

std::vector<double> parse_t_grid(std::string_view spec) {
  std::vector<double> ts;
  const auto parts = split(spec, ':');
  if (parts.size() == 4 && (parts[0] == "geometric" || parts[0] == "linear")) {
    const double a = to_num(parts[1]);
    const double b = to_num(parts[2]);
    const double nd = to_num(parts[3]);
    const int n = static_cast<int>(nd);
    if (n < 1 || nd != n) config("grid size must be a positive integer");
    if (parts[0] == "geometric" && !(a > 0.0 && b > 0.0)) {
      config("geometric grid needs positive endpoints");
    }
    for (int k = 0; k < n; ++k) {
      const double s = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
      ts.push_back(parts[0] == "geometric" ? a * std::pow(b / a, s) : a + (b - a) * s);
    }
    if (n > 1) ts.back() = b;
  } else if (parts.size() == 1) {
    for (auto item : split(spec, ',')) ts.push_back(to_num(item));
  } else {
    config("unknown grid '" + std::string(spec) + "'");
  }
  if (ts.empty()) config("empty t grid");
  for (double t : ts) {
    if (!std::isfinite(t)) config("non-finite grid point");
  }
  return ts;
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pseudoabel
