#pragma once

#include <optional>
#include <span>
#include <vector>

#include <optmeas/point_set.hpp>
#include <optmeas/types.hpp>

namespace optmeas {

struct multi_index {
  std::vector<int> exponents;
  int total_degree = 0;

  friend bool operator==(const multi_index&, const multi_index&) = default;
};

// Standard monomial basis of P_n in d complex variables, graded by total
// degree and lexicographic (x_1 > x_2 > ...) within a degree.
class graded_basis {
 public:
  // Hard cap on N for a materialized basis.
  static constexpr index_t max_size = 10'000'000;

  graded_basis(int dimension, int degree);

  int dimension() const { return dimension_; }
  int degree() const { return degree_; }
  index_t size() const { return indices_.size(); }
  // Sum of the total degrees of all basis monomials, d n N / (d + 1).
  long long degree_sum() const { return degree_sum_; }
  const std::vector<multi_index>& indices() const { return indices_; }

  cvector evaluate(const cvector& point) const;
  // Rows are points, columns basis functions. Evaluated in parallel over points.
  cmatrix vandermonde(const point_set& points) const;

 private:
  void evaluate_into(const complex* point, Eigen::Index stride, complex* out,
                     std::vector<complex>& powers) const;

  int dimension_;
  int degree_;
  long long degree_sum_ = 0;
  std::vector<multi_index> indices_;
};

// binom(d + n, n), throwing size_error on overflow.
index_t basis_size(int dimension, int degree);

graded_basis make_graded_basis(int dimension, int degree);
cvector evaluate_basis(const graded_basis& basis, const cvector& point);
cmatrix vandermonde(const graded_basis& basis, const point_set& points);

// log(|VDM(z_1..z_N)| * prod w^n(z_i)) via full-pivot elimination; -inf when
// the configuration is singular. `phi` (aligned with points) may be empty for
// the unweighted value. Requires |points| == N.
double log_abs_vdm(const graded_basis& basis, const point_set& points,
                   std::span<const double> phi = {});

// Same quantity using only the first m = |points| basis monomials (m <= N).
double log_abs_vdm_leading(const graded_basis& basis, const point_set& points,
                           std::span<const double> phi = {});

// log|det| of a square matrix through rank-revealing LU; -inf if singular.
double log_abs_det(const cmatrix& square);

}  // namespace optmeas
