#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <optmeas/measures.hpp>
#include <optmeas/point_set.hpp>
#include <optmeas/poly_basis.hpp>
#include <optmeas/weight.hpp>

namespace optmeas::design {

enum class algorithm { multiplicative, exchange, hybrid };

std::string to_string(algorithm a);
algorithm algorithm_from_string(const std::string& name);

struct solver_config {
  // Kiefer-Wolfowitz gap threshold, relative to N.
  double tolerance = 1e-6;
  int max_iterations = 20000;
  algorithm method = algorithm::hybrid;
  double prune_threshold = 1e-12;
  // Orders the pairwise exchanges of the hybrid scheme.
  std::uint64_t seed = 0;
  // Hybrid schedule.
  int exchange_period = 50;
  int warmup_iterations = 10;

  void validate() const;
};

struct trace_entry {
  int iteration = 0;
  double log_det = 0.0;
  double kw_gap = 0.0;
};

struct design_result {
  discrete_measure measure;
  // max_x K_n(x) - N over the candidates.
  double kw_gap = infinity;
  double log_det = -infinity;
  int iterations = 0;
  std::vector<trace_entry> trace;
  bool converged = false;
  // max over weights > 1e-7 of |K_n(x_i) - N| / N
  double support_deviation = infinity;
};

// mu'_i = mu_i K_n(x_i) / N, renormalized. `field` must be evaluated on the
// candidate set of `measure`.
discrete_measure multiplicative_step(const discrete_measure& measure, const christoffel_field& field);

// Wynn/Fedorov vertex step toward the Christoffel argmax with step
// (M/N - 1)/(M - 1), M = max K_n; identity when M <= N.
discrete_measure exchange_step(const discrete_measure& measure, const christoffel_field& field,
                               index_t basis_size);

// Pairwise vertex exchanges between support points and the highest-K
// candidates, each with the optimal D-criterion step, carried out in the
// orthonormal coordinates of `fact` with rank-one inverse updates. Never
// decreases det G.
discrete_measure pairwise_exchange_pass(const discrete_measure& measure, const gram_factorization& fact,
                                        const cmatrix& evaluations, std::span<const double> phi,
                                        const christoffel_field& field, std::uint64_t seed);

// Throws admissibility_error unless at least N candidates have w > 0 and their
// Vandermonde matrix has rank N.
void check_admissible(const cmatrix& evaluations, std::span<const double> phi, index_t basis_size);

design_result solve_optimal(std::shared_ptr<const point_set> candidates, const admissible_weight& weight,
                            const graded_basis& basis, const solver_config& config);

// Evaluation-only convenience: field, gap and support deviation of a measure.
struct design_evaluation {
  gram_factorization fact;
  christoffel_field field;
  double kw_gap = infinity;
  double support_deviation = infinity;
};
design_evaluation evaluate_design(const discrete_measure& measure, const cmatrix& evaluations,
                                  const admissible_weight& weight, const graded_basis& basis);

// max K_n - N on an independent mesh; `mesh_weight` tabulated on `fine_mesh`.
double kw_certificate(const design_result& result, const point_set& fine_mesh,
                      const admissible_weight& mesh_weight, const admissible_weight& weight,
                      const graded_basis& basis);

// Weights above this count as support for the support certificate.
inline constexpr double support_report_threshold = 1e-7;

}  // namespace optmeas::design
