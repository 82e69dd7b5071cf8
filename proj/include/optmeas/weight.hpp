#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <optmeas/point_set.hpp>
#include <optmeas/types.hpp>

namespace optmeas {

// Tabulated phi = -log w over a point set. phi = +inf encodes w = 0.
class admissible_weight {
 public:
  admissible_weight() = default;
  admissible_weight(std::vector<double> phi, std::string label = {});

  index_t size() const { return phi_.size(); }
  std::span<const double> phi() const { return phi_; }
  double phi(index_t i) const { return phi_[i]; }
  bool vanishes(index_t i) const { return phi_[i] == infinity; }
  const std::string& label() const { return label_; }

  // phi + t u, the weight w e^{-t u}.
  admissible_weight tilted(std::span<const double> u, double t) const;

  static admissible_weight unit(index_t size) { return admissible_weight(std::vector<double>(size, 0.0), "constant(0)"); }

 private:
  std::vector<double> phi_;
  std::string label_;
};

// Named weight families, re-tabulated on any point set.
struct weight_spec {
  enum class kind { constant, gaussian, power, custom };

  kind family = kind::constant;
  double parameter = 0.0;
  std::filesystem::path csv_path;

  // constant: phi = c; gaussian: phi = c |z|^2; power: phi = a log(1 + |z|^2);
  // custom: the CSV column `phi`, which must match the point count.
  admissible_weight tabulate(const point_set& points) const;
  std::string label() const;
};

std::vector<double> read_phi_csv(const std::filesystem::path& path);

}  // namespace optmeas
