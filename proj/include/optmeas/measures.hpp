#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <optmeas/point_set.hpp>
#include <optmeas/poly_basis.hpp>
#include <optmeas/types.hpp>
#include <optmeas/weight.hpp>

namespace optmeas {

// Probability measure carried by a candidate point set.
class discrete_measure {
 public:
  static constexpr double mass_tolerance = 1e-12;

  // Throws std::invalid_argument unless weights are >= 0 and sum to 1 within
  // mass_tolerance.
  discrete_measure(std::shared_ptr<const point_set> candidates, std::vector<double> weights);

  static discrete_measure uniform(std::shared_ptr<const point_set> candidates);
  static discrete_measure uniform_on(std::shared_ptr<const point_set> candidates,
                                     const std::vector<index_t>& indices);
  // Divides by the total mass, which must be positive.
  static discrete_measure normalized(std::shared_ptr<const point_set> candidates,
                                     std::vector<double> masses);

  index_t size() const { return weights_.size(); }
  const point_set& candidates() const { return *candidates_; }
  const std::shared_ptr<const point_set>& candidates_ptr() const { return candidates_; }
  std::span<const double> weights() const { return weights_; }
  double weight(index_t i) const { return weights_[i]; }

  std::vector<index_t> support(double threshold = support_threshold) const;
  // sum_i mu_i v_i
  double integrate(std::span<const double> values) const;
  complex integrate(std::span<const complex> values) const;

 private:
  std::shared_ptr<const point_set> candidates_;
  std::vector<double> weights_;
};

// <f, g>_{mu,w} = sum_i f(x_i) conj(g(x_i)) e^{-2 n phi_i} mu_i.
complex weighted_inner_product(std::span<const complex> f_values, std::span<const complex> g_values,
                               const discrete_measure& measure, const admissible_weight& weight,
                               int degree);

struct gram_factorization {
  // G_ij = <p_i, p_j>_{mu,w}
  cmatrix gram;
  // log det G, -inf when the measure is degenerate on P_n.
  double log_det = -infinity;
  // q_j = sum_i C_ij p_i is orthonormal; absent when singular. C is upper
  // triangular, the inverse of the triangular QR factor.
  std::optional<cmatrix> ortho_coeffs;
  int degree = 0;

  bool singular() const { return !ortho_coeffs.has_value(); }
};

// Weighted Gram matrix of the monomial basis, factored by Householder QR of
// the scaled evaluation matrix with rows sqrt(mu_i) e^{-n phi_i} P(x_i)^T.
gram_factorization gram(const graded_basis& basis, const discrete_measure& measure,
                        const admissible_weight& weight);

// Same for an arbitrary basis given by its evaluations (rows = candidates).
gram_factorization gram_from_evaluations(const cmatrix& evaluations, std::span<const double> mu,
                                         std::span<const double> phi, int degree);

struct christoffel_field {
  std::vector<double> values;
  double max_value = 0.0;
  index_t argmax_index = 0;
};

christoffel_field make_christoffel_field(std::vector<double> values);

// K_n^{mu,w}(x) = sum_j |q_j(x)|^2 e^{-2 n phi(x)} over the evaluation points.
// `eval_weight` is tabulated on `eval_points`. Throws degenerate_measure_error
// if `fact` is singular.
christoffel_field christoffel(const gram_factorization& fact, const graded_basis& basis,
                              const point_set& eval_points, const admissible_weight& eval_weight);

christoffel_field christoffel_from_evaluations(const gram_factorization& fact,
                                               const cmatrix& evaluations,
                                               std::span<const double> phi);

// w^{2n} P^* G^{-1} P computed through a linear solve with the Gram matrix.
// Cross-check for `christoffel`.
double christoffel_via_inverse(const gram_factorization& fact, const graded_basis& basis,
                               const cvector& point, double phi);

// sqrt(max K_n) over the evaluation points.
double bernstein_markov_factor(const gram_factorization& fact, const graded_basis& basis,
                               const point_set& eval_points, const admissible_weight& eval_weight);

}  // namespace optmeas
