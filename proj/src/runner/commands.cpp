#include <optmeas/runner/commands.hpp>

#include <chrono>
#include <exception>
#include <memory>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <omp.h>

#include <optmeas/asymptotics.hpp>
#include <optmeas/errors.hpp>
#include <optmeas/extremal_points.hpp>
#include <optmeas/io.hpp>
#include <optmeas/log.hpp>
#include <optmeas/runner/invariant_checks.hpp>

namespace optmeas::runner {

namespace {

using json = io::json;
using clock_type = std::chrono::steady_clock;

struct problem {
  std::shared_ptr<const point_set> candidates;
  admissible_weight weight;
};

problem prepare(const experiment_config& config) {
  problem p;
  try {
    p.candidates = std::make_shared<const point_set>(config.domain.build());
    p.weight = config.weight.tabulate(*p.candidates);
  } catch (const std::exception& e) {
    throw config_error(fmt::format("cannot build domain/weight: {}", e.what()));
  }
  index_t usable = 0;
  for (index_t i = 0; i < p.weight.size(); ++i) usable += p.weight.vanishes(i) ? 0 : 1;
  const int d = p.candidates->dimension();
  const index_t needed = basis_size(d, config.degrees.back());
  if (usable < needed) {
    throw admissibility_error(fmt::format("{} usable candidates cannot carry P_{} in dimension {} (N = {})", usable,
                                          config.degrees.back(), d, needed));
  }
  return p;
}

// Runs job(k) for every degree index with at most config.workers threads;
// the first failure in degree order is rethrown.
template <typename Result, typename Job>
std::vector<std::optional<Result>> for_each_degree(const experiment_config& config, Job job) {
  const auto count = static_cast<long>(config.degrees.size());
  std::vector<std::optional<Result>> results(config.degrees.size());
  std::vector<std::exception_ptr> failures(config.degrees.size());
#pragma omp parallel for num_threads(config.workers) schedule(dynamic, 1)
  for (long k = 0; k < count; ++k) {
    try {
      results[static_cast<std::size_t>(k)].emplace(job(config.degrees[static_cast<std::size_t>(k)]));
    } catch (...) {
      failures[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return results;
}

class stage_timer {
 public:
  void start(std::string name) {
    name_ = std::move(name);
    t0_ = clock_type::now();
  }
  void stop() { timings_[name_] = std::chrono::duration<double>(clock_type::now() - t0_).count(); }
  const json& timings() const { return timings_; }

 private:
  std::string name_;
  clock_type::time_point t0_;
  json timings_ = json::object();
};

json manifest_base(const std::string& command, const experiment_config& config) {
  json m;
  m["command"] = command;
  m["version"] = library_version();
  m["config"] = config.echo;
  m["effective"] = {{"outputs", config.outputs.string()},
                    {"seed", config.seed},
                    {"workers", config.workers},
                    {"degrees", config.degrees}};
  return m;
}

void write_manifest(const experiment_config& config, json manifest, const stage_timer& timer) {
  manifest["timings_seconds"] = timer.timings();
  io::write_json_atomic(config.outputs / "manifest.json", manifest);
}

design::design_result solve_degree(const experiment_config& config, const problem& p, int n) {
  const graded_basis basis(p.candidates->dimension(), n);
  return design::solve_optimal(p.candidates, p.weight, basis, config.solver);
}

std::string design_to_csv(const design::design_result& r) {
  const point_set& pts = r.measure.candidates();
  std::string s = "index";
  for (int k = 1; k <= pts.dimension(); ++k) s += fmt::format(",re_{},im_{}", k, k);
  s += ",weight\n";
  for (index_t i : r.measure.support()) {
    s += fmt::format("{}", i);
    for (int k = 0; k < pts.dimension(); ++k) {
      s += fmt::format(",{},{}", io::format_double(pts.coord(i, k).real()), io::format_double(pts.coord(i, k).imag()));
    }
    s += "," + io::format_double(r.measure.weight(i)) + "\n";
  }
  return s;
}

}  // namespace

std::string library_version() {
#ifdef OPTMEAS_VERSION
  return OPTMEAS_VERSION;
#else
  return "unknown";
#endif
}

int cmd_design(const experiment_config& config, std::ostream& out) {
  stage_timer timer;
  timer.start("prepare");
  const problem p = prepare(config);
  timer.stop();

  timer.start("solve");
  auto results = for_each_degree<design::design_result>(
      config, [&](int n) { return solve_degree(config, p, n); });
  timer.stop();

  timer.start("write");
  json manifest = manifest_base("design", config);
  json artifacts = json::array();
  bool all_converged = true;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const int n = config.degrees[k];
    const auto& r = *results[k];
    const graded_basis basis(p.candidates->dimension(), n);
    const std::string stem = fmt::format("design_n{}", n);
    io::write_json_atomic(config.outputs / (stem + ".json"), io::design_to_json(r, basis));
    io::write_atomic(config.outputs / (stem + ".csv"), design_to_csv(r));
    io::write_atomic(config.outputs / (stem + "_trace.csv"), io::trace_to_csv(r.trace));
    artifacts.push_back({{"degree", n}, {"files", {stem + ".json", stem + ".csv", stem + "_trace.csv"}}});
    all_converged = all_converged && r.converged;
    fmt::print(out, "degree {:>3}  N {:>5}  support {:>5}  kw_gap {:>10.3e}  iterations {:>6}  {}\n", n, basis.size(),
               r.measure.support(design::support_report_threshold).size(), r.kw_gap, r.iterations,
               r.converged ? "converged" : "NOT CONVERGED");
  }
  manifest["artifacts"] = std::move(artifacts);
  timer.stop();
  write_manifest(config, std::move(manifest), timer);
  return all_converged ? exit_ok : exit_soft_failure;
}

int cmd_points(const experiment_config& config, std::ostream& out) {
  const std::string& kind = config.points.kind;
  if (kind != "fekete" && kind != "leja") throw config_error(fmt::format("unknown points kind '{}'", kind));
  stage_timer timer;
  timer.start("prepare");
  const problem p = prepare(config);
  const int d = p.candidates->dimension();
  for (int n : config.degrees) {
    if (config.points.count && *config.points.count > basis_size(d, n)) {
      throw config_error(fmt::format("points.count {} exceeds N = {} at degree {}", *config.points.count,
                                     basis_size(d, n), n));
    }
  }
  timer.stop();

  timer.start("construct");
  auto families = for_each_degree<extremal::point_family>(config, [&](int n) {
    const graded_basis basis(d, n);
    if (kind == "fekete") return extremal::brute_force_fekete(*p.candidates, p.weight, basis);
    return extremal::leja_sequence(*p.candidates, p.weight, basis, config.points.count.value_or(basis.size()));
  });
  timer.stop();

  timer.start("write");
  json manifest = manifest_base("points", config);
  json artifacts = json::array();
  for (std::size_t k = 0; k < families.size(); ++k) {
    const int n = config.degrees[k];
    const auto& f = *families[k];
    const std::string stem = fmt::format("points_{}_n{}", kind, n);
    io::write_atomic(config.outputs / (stem + ".csv"), point_set_to_csv(f.points));
    io::write_json_atomic(config.outputs / (stem + ".json"), io::family_to_json(f));
    artifacts.push_back({{"degree", n}, {"files", {stem + ".csv", stem + ".json"}}});
    fmt::print(out, "degree {:>3}  {} points  log_weighted_vdm {:.17g}\n", n, f.points.size(), f.log_weighted_vdm);
  }
  manifest["artifacts"] = std::move(artifacts);
  timer.stop();
  write_manifest(config, std::move(manifest), timer);
  return exit_ok;
}

int cmd_diameter(const experiment_config& config, std::ostream& out) {
  if (config.degrees.front() < 1) throw config_error("diameter needs degrees >= 1");
  stage_timer timer;
  timer.start("prepare");
  const problem p = prepare(config);
  const int d = p.candidates->dimension();
  timer.stop();

  struct row {
    asymptotics::diameter_estimate estimate;
    bool converged;
  };
  timer.start("estimate");
  auto rows = for_each_degree<row>(config, [&](int n) {
    const graded_basis basis(d, n);
    const auto result = solve_degree(config, p, n);
    const bool fekete = extremal::subset_count(p.candidates->size(), basis.size()) <= extremal::max_fekete_subsets;
    const auto family = fekete ? extremal::brute_force_fekete(*p.candidates, p.weight, basis)
                               : extremal::leja_sequence(*p.candidates, p.weight, basis, basis.size());
    return row{asymptotics::estimate_diameter(result, family, basis), result.converged};
  });
  timer.stop();

  timer.start("write");
  std::vector<asymptotics::diameter_estimate> table;
  bool ok = true;
  for (const auto& r : rows) {
    table.push_back(r->estimate);
    ok = ok && r->converged && r->estimate.lower_ok && r->estimate.upper_ok;
    fmt::print(out, "degree {:>3}  delta_points {:.6f}  delta_gram {:.6f}  route {}  sandwich {}\n",
               r->estimate.degree, r->estimate.delta_from_points, r->estimate.delta_from_gram,
               r->estimate.points_route, r->estimate.lower_ok && r->estimate.upper_ok ? "ok" : "VIOLATED");
    if (!r->converged) fmt::print(out, "degree {:>3}  design NOT CONVERGED\n", r->estimate.degree);
  }
  io::write_atomic(config.outputs / "diameter.csv", io::diameter_to_csv(table));
  io::write_json_atomic(config.outputs / "diameter.json", io::diameter_to_json(table));
  io::write_atomic(config.outputs / "diameter_plot.dat", io::diameter_plot_data(table));
  json manifest = manifest_base("diameter", config);
  manifest["artifacts"] = json::array();
  manifest["reports"] = {"diameter.csv", "diameter.json", "diameter_plot.dat"};
  timer.stop();
  write_manifest(config, std::move(manifest), timer);
  return ok ? exit_ok : exit_soft_failure;
}

int cmd_converge(const experiment_config& config, std::ostream& out) {
  if (!config.converge.reference) throw config_error("converge needs a reference measure");
  asymptotics::reference_kind ref;
  try {
    ref = asymptotics::reference_from_string(*config.converge.reference);
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  stage_timer timer;
  timer.start("prepare");
  const problem p = prepare(config);
  if (p.candidates->dimension() != 1) throw config_error("converge supports univariate domains only");
  timer.stop();

  timer.start("solve");
  auto results = for_each_degree<design::design_result>(
      config, [&](int n) { return solve_degree(config, p, n); });
  timer.stop();

  timer.start("write");
  std::vector<discrete_measure> designs;
  bool all_converged = true;
  for (const auto& r : results) {
    designs.push_back(r->measure);
    all_converged = all_converged && r->converged;
  }
  const auto report = asymptotics::make_convergence_report(
      config.degrees, designs, asymptotics::reference_equilibrium(ref), config.converge.moment_cap,
      config.converge.radius);
  io::write_atomic(config.outputs / "convergence.csv", io::convergence_to_csv(report));
  io::write_json_atomic(config.outputs / "convergence.json", io::convergence_to_json(report));
  io::write_atomic(config.outputs / "convergence_plot.dat", io::convergence_plot_data(report));
  for (std::size_t k = 0; k < report.degrees.size(); ++k) {
    fmt::print(out, "degree {:>3}  max moment error {:.3e}  mass |z| >= {} {:.6f}  |first moment| {:.3e}{}\n",
               report.degrees[k], report.moment_errors.row(static_cast<Eigen::Index>(k)).maxCoeff(),
               report.localization_radius, report.mass_outside_region[k], report.first_moment_modulus[k],
               results[k]->converged ? "" : "  NOT CONVERGED");
  }
  json manifest = manifest_base("converge", config);
  manifest["reference"] = report.reference_label;
  manifest["artifacts"] = json::array();
  manifest["reports"] = {"convergence.csv", "convergence.json", "convergence_plot.dat"};
  timer.stop();
  write_manifest(config, std::move(manifest), timer);
  return all_converged ? exit_ok : exit_soft_failure;
}

int cmd_check(const experiment_config& config, std::ostream& out) {
  const auto results = run_invariant_suite(config.seed, config.check.tolerance);
  out << format_invariant_table(results);
  std::string failing;
  for (const auto& r : results) {
    if (!r.passed) failing += (failing.empty() ? "" : ", ") + r.name;
  }
  if (failing.empty()) return exit_ok;
  fmt::print(out, "failing invariants: {}\n", failing);
  return exit_soft_failure;
}

int run_command(const std::string& name, const command_options& options, std::ostream& out, std::ostream& err) {
  try {
    experiment_config config;
    if (options.config) {
      config = load_config(*options.config);
    } else if (name == "check") {
      config = default_config();
    } else {
      throw config_error(fmt::format("'{}' needs --config", name));
    }
    if (options.out) config.outputs = *options.out;
    if (options.workers) {
      if (*options.workers < 1) throw config_error("--workers must be >= 1");
      config.workers = *options.workers;
    }
    if (options.seed) {
      config.seed = *options.seed;
      config.solver.seed = *options.seed;
    }
    if (options.kind) config.points.kind = *options.kind;
    if (options.reference) config.converge.reference = *options.reference;
    if (options.check_tolerance) config.check.tolerance = *options.check_tolerance;

    log::info("{} on {} with {} worker(s)", name, config.domain.label(), config.workers);
    if (name == "design") return cmd_design(config, out);
    if (name == "points") return cmd_points(config, out);
    if (name == "diameter") return cmd_diameter(config, out);
    if (name == "converge") return cmd_converge(config, out);
    if (name == "check") return cmd_check(config, out);
    throw config_error(fmt::format("unknown command '{}'", name));
  } catch (const config_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_usage;
  } catch (const admissibility_error& e) {
    fmt::print(err, "infeasible: {}\n", e.what());
    return exit_infeasible;
  } catch (const size_error& e) {
    fmt::print(err, "infeasible: {}\n", e.what());
    return exit_infeasible;
  } catch (const degenerate_measure_error& e) {
    fmt::print(err, "infeasible: {}\n", e.what());
    return exit_infeasible;
  } catch (const std::exception& e) {
    fmt::print(err, "failed: {}\n", e.what());
    return exit_soft_failure;
  }
}

}  // namespace optmeas::runner
