#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <optmeas/runner/commands.hpp>

int main(int argc, char** argv) {
  using optmeas::runner::command_options;

  CLI::App app{"Optimal measures, Fekete/Leja points and transfinite diameter experiments"};
  app.set_version_flag("--version", optmeas::runner::library_version());
  app.require_subcommand(1);

  command_options opts;
  std::string config;
  std::string out;
  int workers = 0;
  std::uint64_t seed = 0;
  std::string kind;
  std::string reference;
  double tolerance = 0.0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    if (config_required) c->required();
    sub->add_option("--out", out, "Output directory (overrides config.outputs)");
    sub->add_option("--workers", workers, "Degree-level worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Seed for randomized steps");
  };

  auto* design = app.add_subcommand("design", "Solve optimal designs per degree");
  add_common(design, true);
  auto* points = app.add_subcommand("points", "Brute-force Fekete or Leja point families");
  add_common(points, true);
  points->add_option("--kind", kind, "fekete | leja")->check(CLI::IsMember({"fekete", "leja"}));
  auto* diameter = app.add_subcommand("diameter", "Transfinite diameter estimates and sandwich bounds");
  add_common(diameter, true);
  auto* converge = app.add_subcommand("converge", "Moment convergence toward a reference measure");
  add_common(converge, true);
  converge->add_option("--reference", reference, "arcsine_interval | uniform_circle");
  auto* check = app.add_subcommand("check", "Cross-module invariant suite");
  add_common(check, false);
  check->add_option("--tolerance", tolerance, "Replace every invariant tolerance")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return optmeas::runner::exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (!config.empty()) opts.config = config;
  if (sub->count("--out") > 0) opts.out = out;
  if (sub->count("--workers") > 0) opts.workers = workers;
  if (sub->count("--seed") > 0) opts.seed = seed;
  if (sub == points && points->count("--kind") > 0) opts.kind = kind;
  if (sub == converge && converge->count("--reference") > 0) opts.reference = reference;
  if (sub == check && check->count("--tolerance") > 0) opts.check_tolerance = tolerance;

  return optmeas::runner::run_command(sub->get_name(), opts, std::cout, std::cerr);
}
