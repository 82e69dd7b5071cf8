#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP implementation and a
// plain serial reference in `kernels::serial` with identical semantics; the
// tests compare the two and bench/ times them.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <optmeas/types.hpp>

namespace optmeas::kernels {

// out_i = ||evaluations.row(i) * coeffs||^2 * exp(-2 n phi_i); 0 where phi_i = +inf.
void christoffel_sweep(const cmatrix& evaluations, const cmatrix& coeffs,
                       std::span<const double> phi, int degree, std::span<double> out);

struct subset_result {
  double log_value = -infinity;
  std::vector<index_t> indices;
};

// Maximizes log|det| over all k-row subsets of `rows` (weights already folded
// in). Lexicographically smallest index tuple wins ties (1e-12 relative).
subset_result max_det_subset(const cmatrix& rows, index_t k);

struct lagrange_stats {
  double lebesgue = 0.0;             // max_z sum_k |l_k(z)|
  double fejer = 0.0;                // max_z sum_k |l_k(z)|^2
  std::vector<double> max_abs;       // per k: max_z |l_k(z)|
};

// Statistics of l(z)^T = P(z)^T coeffs over mesh rows.
lagrange_stats lagrange_sweep(const cmatrix& mesh_evaluations, const cmatrix& coeffs);

namespace serial {

void christoffel_sweep(const cmatrix& evaluations, const cmatrix& coeffs,
                       std::span<const double> phi, int degree, std::span<double> out);
subset_result max_det_subset(const cmatrix& rows, index_t k);
lagrange_stats lagrange_sweep(const cmatrix& mesh_evaluations, const cmatrix& coeffs);

}  // namespace serial

// Shared by both implementations.
namespace detail {

inline constexpr double tie_tolerance = 1e-12;

inline bool strictly_better(double candidate, double incumbent) {
  if (incumbent == -infinity) return candidate > -infinity;
  const double scale = std::max(1.0, std::abs(incumbent));
  return candidate > incumbent + tie_tolerance * scale;
}

// Best k-subset whose smallest index is `first`; candidates are rows > first.
subset_result best_subset_with_first(const cmatrix& rows, index_t k, index_t first);

}  // namespace detail

}  // namespace optmeas::kernels
