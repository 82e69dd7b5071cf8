#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <optmeas/types.hpp>

namespace optmeas {

// Finite list of points in C^d. Row i of `coords()` is the i-th point.
class point_set {
 public:
  point_set() = default;
  point_set(cmatrix coords, std::string label = {});

  index_t size() const { return static_cast<index_t>(coords_.rows()); }
  int dimension() const { return static_cast<int>(coords_.cols()); }
  bool empty() const { return coords_.rows() == 0; }

  const cmatrix& coords() const { return coords_; }
  cvector point(index_t i) const { return coords_.row(static_cast<Eigen::Index>(i)).transpose(); }
  complex coord(index_t i, int k) const { return coords_(static_cast<Eigen::Index>(i), k); }
  const std::string& label() const { return label_; }

  // Points at the given indices, in that order.
  point_set subset(const std::vector<index_t>& indices, std::string label = {}) const;

  // Equispaced real grid a = x_0 < ... < x_{count-1} = b embedded in C.
  static point_set interval(double a, double b, index_t count);

  // Polar grid of the closed unit disk: radii k/R (k = 1..R) times angles
  // 2 pi j / A (j = 0..A-1). Radius-major order.
  static point_set polar_disk(index_t radial_points, index_t angular_points);

  static point_set from_real(const std::vector<double>& xs, std::string label = {});

 private:
  cmatrix coords_;
  std::string label_;
};

// CSV with header re_1,im_1,...,re_d,im_d and one point per row.
point_set read_point_set_csv(const std::filesystem::path& path);
void write_point_set_csv(const point_set& points, const std::filesystem::path& path);
std::string point_set_to_csv(const point_set& points);
point_set point_set_from_csv(const std::string& text, std::string label = {});

}  // namespace optmeas
