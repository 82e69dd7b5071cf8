#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <optmeas/design_solver.hpp>
#include <optmeas/io.hpp>
#include <optmeas/point_set.hpp>
#include <optmeas/weight.hpp>

namespace optmeas::runner {

// Malformed or inconsistent configuration (usage error).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct domain_config {
  enum class kind { interval, disk, custom };

  kind family = kind::interval;
  double a = -1.0;
  double b = 1.0;
  index_t points = 201;
  index_t radial_points = 25;
  index_t angular_points = 64;
  std::filesystem::path csv_path;

  point_set build() const;
  std::string label() const;
};

struct points_config {
  std::string kind = "leja";
  // Leja length; defaults to N for each degree.
  std::optional<index_t> count;
};

struct converge_config {
  std::optional<std::string> reference;
  int moment_cap = 4;
  double radius = 0.95;
};

struct check_config {
  // Replaces every invariant tolerance when set.
  std::optional<double> tolerance;
};

struct experiment_config {
  io::json echo;
  domain_config domain;
  weight_spec weight;
  std::vector<int> degrees;
  design::solver_config solver;
  std::filesystem::path outputs = "out";
  std::uint64_t seed = 0;
  int workers = 1;
  points_config points;
  converge_config converge;
  check_config check;
};

// Strict parse: unknown keys, wrong types and invalid values throw
// config_error. Relative CSV paths resolve against `base_dir`.
experiment_config parse_config(const io::json& doc, const std::filesystem::path& base_dir = {});
experiment_config load_config(const std::filesystem::path& path);

// interval(-1, 1, 201), w = 1, degrees {1, 2, 4}
experiment_config default_config();

}  // namespace optmeas::runner
