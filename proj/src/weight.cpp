#include <optmeas/weight.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace optmeas {

admissible_weight::admissible_weight(std::vector<double> phi, std::string label)
    : phi_(std::move(phi)), label_(std::move(label)) {
  for (std::size_t i = 0; i < phi_.size(); ++i) {
    if (std::isnan(phi_[i]) || phi_[i] == -infinity) {
      throw std::invalid_argument(fmt::format("weight phi[{}] must be > -inf (w finite)", i));
    }
  }
}

admissible_weight admissible_weight::tilted(std::span<const double> u, double t) const {
  if (u.size() != phi_.size()) throw std::invalid_argument("tilt direction size mismatch");
  std::vector<double> p(phi_.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = phi_[i] == infinity ? infinity : phi_[i] + t * u[i];
  }
  return admissible_weight(std::move(p), fmt::format("{}*exp(-{} u)", label_, t));
}

std::vector<double> read_phi_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open weight CSV '{}'", path.string()));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("weight CSV: missing header");
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line != "phi") throw std::runtime_error("weight CSV: header must be 'phi'");
  std::vector<double> phi;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line == "inf" || line == "+inf" || line == "Infinity") {
      phi.push_back(infinity);
    } else {
      phi.push_back(std::stod(line));
    }
  }
  return phi;
}

admissible_weight weight_spec::tabulate(const point_set& points) const {
  std::vector<double> phi(points.size(), 0.0);
  switch (family) {
    case kind::constant:
      std::fill(phi.begin(), phi.end(), parameter);
      break;
    case kind::gaussian:
    case kind::power:
      for (index_t i = 0; i < points.size(); ++i) {
        double r2 = 0.0;
        for (int k = 0; k < points.dimension(); ++k) r2 += std::norm(points.coord(i, k));
        phi[i] = family == kind::gaussian ? parameter * r2 : parameter * std::log1p(r2);
      }
      break;
    case kind::custom:
      phi = read_phi_csv(csv_path);
      if (phi.size() != points.size()) {
        throw std::invalid_argument(fmt::format("weight CSV has {} rows, point set has {}",
                                                phi.size(), points.size()));
      }
      break;
  }
  return admissible_weight(std::move(phi), label());
}

std::string weight_spec::label() const {
  switch (family) {
    case kind::constant: return fmt::format("constant({})", parameter);
    case kind::gaussian: return fmt::format("gaussian({})", parameter);
    case kind::power: return fmt::format("power({})", parameter);
    case kind::custom: return fmt::format("custom({})", csv_path.string());
  }
  return "unknown";
}

}  // namespace optmeas
