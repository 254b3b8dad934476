#include <iostream>

#include "CLI11.hpp"
#include "pseudoabel/cli.hpp"

int main(int argc, char** argv) {
  using namespace pseudoabel;
  CLI::App app{"pseudoabel: J-series, Mellin kernels, zero counts and oval integrals"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> axes;
  double t = 0.0;
  double kappa = 0.0;
  double tol = 0.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "input JSON file, or random / random-real")->required();
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--t-grid", cfg.t_grid, "geometric:a:b:n, linear:a:b:n or a,b,c");
    sub->add_option("--kappa", kappa, "rotation angle");
    sub->add_option("--seed", cfg.seed, "seed for generated inputs");
    sub->add_option("--tol", tol, "tolerance (quadrature or level)");
    sub->add_option("--threads", cfg.threads, "worker threads (0: PSEUDOABEL_THREADS)");
    sub->add_flag("--schema-check", cfg.schema_check, "validate the input and exit");
  };

  const std::pair<const char*, const char*> commands[] = {
      {"eval-series", "evaluate a series on a t grid (CSV)"},
      {"mellin-table", "Mellin image and principal parts (JSON)"},
      {"invert-mellin", "inverse Mellin transform on a t grid (CSV)"},
      {"petrov", "apply the Petrov operator at --kappa (JSON)"},
      {"reduce", "run the Petrov reduction chain (JSON)"},
      {"count-zeros", "certified zero count on (0, 1) (JSON)"},
      {"verify-petrov", "check the Petrov inequality at --kappa (JSON)"},
      {"trace-oval", "trace the level curve f = --t (CSV)"},
      {"integrate", "oval integrals of a form on a t grid (CSV)"},
      {"sweep", "zero counts over perturbed exponents or coefficients (CSV)"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (std::string_view(name) == "trace-oval") sub->add_option("--t", t, "level");
    if (std::string_view(name) == "count-zeros") {
      sub->add_option("--method", cfg.method, "scan, argument or both");
    }
    if (std::string_view(name) == "sweep") {
      sub->add_option("--axis", axes, "exponent:i:lo:hi:n or coef:k:lo:hi:n");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    cfg.command = *parse_command(sub->get_name());
    if (sub->count("--kappa")) cfg.kappa = kappa;
    if (sub->count("--tol")) cfg.tol = tol;
    if (sub->get_name() == "trace-oval" && sub->count("--t")) cfg.t = t;
  }
  try {
    for (const auto& a : axes) cfg.sweep_axes.push_back(parse_sweep_axis(a));
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return run_command(cfg, std::cout, std::cerr);
}
