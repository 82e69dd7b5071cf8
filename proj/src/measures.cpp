#include <optmeas/measures.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/QR>
#include <fmt/format.h>

#include <optmeas/errors.hpp>
#include <optmeas/kernels.hpp>

namespace optmeas {

discrete_measure::discrete_measure(std::shared_ptr<const point_set> candidates, std::vector<double> weights)
    : candidates_(std::move(candidates)), weights_(std::move(weights)) {
  if (!candidates_) throw std::invalid_argument("discrete_measure: null candidate set");
  if (weights_.size() != candidates_->size()) {
    throw std::invalid_argument(fmt::format("discrete_measure: {} weights for {} candidates",
                                            weights_.size(), candidates_->size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument(fmt::format("discrete_measure: weight {} is negative or not finite", i));
    }
    total += weights_[i];
  }
  if (std::abs(total - 1.0) > mass_tolerance) {
    throw std::invalid_argument(fmt::format("discrete_measure: total mass {:.17g} is not 1", total));
  }
}

discrete_measure discrete_measure::uniform(std::shared_ptr<const point_set> candidates) {
  const index_t m = candidates->size();
  if (m == 0) throw std::invalid_argument("discrete_measure: empty candidate set");
  return discrete_measure(std::move(candidates), std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

discrete_measure discrete_measure::uniform_on(std::shared_ptr<const point_set> candidates,
                                              const std::vector<index_t>& indices) {
  if (indices.empty()) throw std::invalid_argument("discrete_measure: empty support");
  std::vector<double> w(candidates->size(), 0.0);
  for (index_t i : indices) {
    if (i >= w.size()) throw std::out_of_range("discrete_measure: support index out of range");
    w[i] += 1.0 / static_cast<double>(indices.size());
  }
  return normalized(std::move(candidates), std::move(w));
}

discrete_measure discrete_measure::normalized(std::shared_ptr<const point_set> candidates,
                                              std::vector<double> masses) {
  double total = 0.0;
  for (double v : masses) {
    if (!(v >= 0.0)) throw std::invalid_argument("discrete_measure: negative mass");
    total += v;
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw std::invalid_argument("discrete_measure: zero total mass");
  for (double& v : masses) v /= total;
  return discrete_measure(std::move(candidates), std::move(masses));
}

std::vector<index_t> discrete_measure::support(double threshold) const {
  std::vector<index_t> s;
  for (index_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] >= threshold && weights_[i] > 0.0) s.push_back(i);
  }
  return s;
}

double discrete_measure::integrate(std::span<const double> values) const {
  if (values.size() != weights_.size()) throw std::invalid_argument("integrate: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights_[i] != 0.0) s += weights_[i] * values[i];
  }
  return s;
}

complex discrete_measure::integrate(std::span<const complex> values) const {
  if (values.size() != weights_.size()) throw std::invalid_argument("integrate: size mismatch");
  complex s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights_[i] != 0.0) s += weights_[i] * values[i];
  }
  return s;
}

complex weighted_inner_product(std::span<const complex> f_values, std::span<const complex> g_values,
                               const discrete_measure& measure, const admissible_weight& weight,
                               int degree) {
  const index_t m = measure.size();
  if (f_values.size() != m || g_values.size() != m || weight.size() != m) {
    throw std::invalid_argument("weighted_inner_product: vectors must align with the candidate set");
  }
  complex s = 0.0;
  for (index_t i = 0; i < m; ++i) {
    const double mu = measure.weight(i);
    if (mu == 0.0 || weight.vanishes(i)) continue;
    const double scale = std::exp(std::log(mu) - 2.0 * degree * weight.phi(i));
    s += f_values[i] * std::conj(g_values[i]) * scale;
  }
  return s;
}

gram_factorization gram_from_evaluations(const cmatrix& evaluations, std::span<const double> mu,
                                         std::span<const double> phi, int degree) {
  const auto m = static_cast<index_t>(evaluations.rows());
  if (mu.size() != m || phi.size() != m) {
    throw std::invalid_argument("gram: measure/weight must align with the evaluation rows");
  }
  const Eigen::Index nb = evaluations.cols();

  std::vector<Eigen::Index> rows;
  std::vector<double> scale;
  for (index_t i = 0; i < m; ++i) {
    if (mu[i] < support_threshold || phi[i] == infinity) continue;
    rows.push_back(static_cast<Eigen::Index>(i));
    scale.push_back(std::exp(0.5 * std::log(mu[i]) - degree * phi[i]));
  }
  if (rows.empty()) throw std::invalid_argument("gram: measure has no support");

  cmatrix b(static_cast<Eigen::Index>(rows.size()), nb);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    b.row(static_cast<Eigen::Index>(r)) = scale[r] * evaluations.row(rows[r]);
  }

  gram_factorization f;
  f.degree = degree;
  // (B^* B)_{ij} = <p_j, p_i>, so G = conj(B^* B) = B^T conj(B).
  f.gram = b.transpose() * b.conjugate();

  if (b.rows() < nb) return f;
  Eigen::HouseholderQR<cmatrix> qr(b);
  const cmatrix r = qr.matrixQR().topRows(nb).triangularView<Eigen::Upper>();
  double max_pivot = 0.0;
  double min_pivot = infinity;
  double log_det = 0.0;
  for (Eigen::Index k = 0; k < nb; ++k) {
    const double p = std::abs(r(k, k));
    max_pivot = std::max(max_pivot, p);
    min_pivot = std::min(min_pivot, p);
    log_det += 2.0 * std::log(p);
  }
  if (!(max_pivot > 0.0) || min_pivot <= singular_pivot_ratio * max_pivot) return f;

  f.log_det = log_det;
  f.ortho_coeffs = r.triangularView<Eigen::Upper>().solve(cmatrix::Identity(nb, nb));
  return f;
}

gram_factorization gram(const graded_basis& basis, const discrete_measure& measure,
                        const admissible_weight& weight) {
  if (weight.size() != measure.size()) {
    throw std::invalid_argument("gram: weight must be tabulated on the candidate set");
  }
  return gram_from_evaluations(basis.vandermonde(measure.candidates()), measure.weights(), weight.phi(),
                               basis.degree());
}

christoffel_field make_christoffel_field(std::vector<double> values) {
  christoffel_field f;
  f.values = std::move(values);
  f.max_value = f.values.empty() ? 0.0 : f.values.front();
  for (index_t i = 1; i < f.values.size(); ++i) {
    if (f.values[i] > f.max_value) {
      f.max_value = f.values[i];
      f.argmax_index = i;
    }
  }
  return f;
}

christoffel_field christoffel_from_evaluations(const gram_factorization& fact, const cmatrix& evaluations,
                                               std::span<const double> phi) {
  if (fact.singular()) throw degenerate_measure_error("christoffel: measure is degenerate on P_n");
  std::vector<double> values(static_cast<std::size_t>(evaluations.rows()));
  kernels::christoffel_sweep(evaluations, *fact.ortho_coeffs, phi, fact.degree, values);
  return make_christoffel_field(std::move(values));
}

christoffel_field christoffel(const gram_factorization& fact, const graded_basis& basis,
                              const point_set& eval_points, const admissible_weight& eval_weight) {
  if (eval_weight.size() != eval_points.size()) {
    throw std::invalid_argument("christoffel: weight must be tabulated on the evaluation points");
  }
  if (fact.singular()) throw degenerate_measure_error("christoffel: measure is degenerate on P_n");
  return christoffel_from_evaluations(fact, basis.vandermonde(eval_points), eval_weight.phi());
}

double christoffel_via_inverse(const gram_factorization& fact, const graded_basis& basis,
                               const cvector& point, double phi) {
  if (fact.singular()) throw degenerate_measure_error("christoffel_via_inverse: singular Gram matrix");
  if (phi == infinity) return 0.0;
  const cvector p = basis.evaluate(point);
  const cvector y = fact.gram.partialPivLu().solve(p);
  const double quad = p.dot(y).real();  // P^* G^{-1} P
  return quad * std::exp(-2.0 * fact.degree * phi);
}

double bernstein_markov_factor(const gram_factorization& fact, const graded_basis& basis,
                               const point_set& eval_points, const admissible_weight& eval_weight) {
  return std::sqrt(christoffel(fact, basis, eval_points, eval_weight).max_value);
}

}  // namespace optmeas
