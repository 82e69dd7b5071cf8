#pragma once

#include <memory>
#include <string>
#include <vector>

#include <optmeas/measures.hpp>
#include <optmeas/point_set.hpp>
#include <optmeas/poly_basis.hpp>
#include <optmeas/weight.hpp>

namespace optmeas::extremal {

enum class family_kind { fekete_bruteforce, leja, custom };

std::string to_string(family_kind k);

struct point_family {
  family_kind kind = family_kind::custom;
  point_set points;
  // Row indices into the generating candidate set.
  std::vector<index_t> candidate_indices;
  // log(|VDM| prod w^n) of `points` (leading basis functions when shorter than N).
  double log_weighted_vdm = -infinity;
  int degree = 0;
  // Leja only: log VDM increment of each added point.
  std::vector<double> increments;
};

// Oracle-scale guard on binom(|candidates|, N).
inline constexpr double max_fekete_subsets = 1e6;

double subset_count(index_t candidates, index_t size);

// Exhaustive weighted Fekete search over all N-subsets. Throws
// admissibility_error when binom(|candidates|, N) > 1e6.
point_family brute_force_fekete(const point_set& candidates, const admissible_weight& weight,
                                const graded_basis& basis);

// Greedy weighted Leja sequence of `count` <= N points. The first point
// maximizes w^n (ties: largest |x|, then largest index); each later point
// maximizes the weighted VDM increment (ties: lowest index). Increments come
// from row-pivoted elimination residuals on the weighted candidate Vandermonde.
point_family leja_sequence(const point_set& candidates, const admissible_weight& weight,
                           const graded_basis& basis, index_t count);

// Equal weights 1/|family| on the family's candidate indices.
discrete_measure fekete_measure(const point_family& family, std::shared_ptr<const point_set> candidates);

struct lagrange_basis {
  point_set nodes;
  // Column i holds the monomial coefficients of l_i: l_i(x) = P(x)^T col_i.
  cmatrix coefficients;

  cvector evaluate(const graded_basis& basis, const cvector& x) const;
};

// Solves V L = I for the nodal Vandermonde V. Throws degenerate_measure_error
// for a non-unisolvent node set.
lagrange_basis make_lagrange_basis(const point_set& nodes, const graded_basis& basis);

// max over the mesh of sum_k |l_k|
double lebesgue_constant(const lagrange_basis& lb, const graded_basis& basis, const point_set& mesh);
// max over the mesh of sum_k |l_k|^2
double fejer_sum(const lagrange_basis& lb, const graded_basis& basis, const point_set& mesh);
// Per node: max over the mesh of |l_i|
std::vector<double> lagrange_sup_norms(const lagrange_basis& lb, const graded_basis& basis,
                                       const point_set& mesh);

struct lebesgue_row {
  int degree = 0;
  double lebesgue = 0.0;
  double nth_root = 0.0;  // Lambda_n^{1/n}
};

// Report only. Families must have strictly increasing degree >= 1.
std::vector<lebesgue_row> lebesgue_growth_diagnostic(const std::vector<point_family>& families,
                                                     int dimension, const point_set& mesh);

}  // namespace optmeas::extremal
