#include <optmeas/design_solver.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/QR>
#include <fmt/format.h>

#include <optmeas/errors.hpp>
#include <optmeas/log.hpp>

namespace optmeas::design {

std::string to_string(algorithm a) {
  switch (a) {
    case algorithm::multiplicative: return "multiplicative";
    case algorithm::exchange: return "exchange";
    case algorithm::hybrid: return "hybrid";
  }
  return "hybrid";
}

algorithm algorithm_from_string(const std::string& name) {
  if (name == "multiplicative") return algorithm::multiplicative;
  if (name == "exchange") return algorithm::exchange;
  if (name == "hybrid") return algorithm::hybrid;
  throw std::invalid_argument(fmt::format("unknown solver algorithm '{}'", name));
}

void solver_config::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("solver max_iterations must be >= 1");
  if (!(prune_threshold >= 0.0)) throw std::invalid_argument("solver prune_threshold must be >= 0");
  if (exchange_period < 1) throw std::invalid_argument("solver exchange_period must be >= 1");
  if (warmup_iterations < 0) throw std::invalid_argument("solver warmup_iterations must be >= 0");
}

discrete_measure multiplicative_step(const discrete_measure& measure, const christoffel_field& field) {
  if (field.values.size() != measure.size()) {
    throw std::invalid_argument("multiplicative_step: field not evaluated on the candidate set");
  }
  std::vector<double> w(measure.size());
  double total = 0.0;
  for (index_t i = 0; i < w.size(); ++i) {
    w[i] = measure.weight(i) * field.values[i];
    total += w[i];
  }
  // total equals N up to rounding (mass identity); dividing by the computed
  // sum keeps the result a probability measure.
  if (!(total > 0.0)) throw degenerate_measure_error("multiplicative_step: zero total mass");
  for (double& v : w) v /= total;
  return discrete_measure(measure.candidates_ptr(), std::move(w));
}

discrete_measure exchange_step(const discrete_measure& measure, const christoffel_field& field,
                               index_t basis_size) {
  if (field.values.size() != measure.size()) {
    throw std::invalid_argument("exchange_step: field not evaluated on the candidate set");
  }
  const double n_dim = static_cast<double>(basis_size);
  const double m = field.max_value;
  if (m <= n_dim || m == 1.0) return measure;
  const double alpha = std::clamp((m / n_dim - 1.0) / (m - 1.0), 0.0, std::nextafter(1.0, 0.0));
  std::vector<double> w(measure.size());
  for (index_t i = 0; i < w.size(); ++i) w[i] = (1.0 - alpha) * measure.weight(i);
  w[field.argmax_index] += alpha;
  return discrete_measure::normalized(measure.candidates_ptr(), std::move(w));
}

discrete_measure pairwise_exchange_pass(const discrete_measure& measure, const gram_factorization& fact,
                                        const cmatrix& evaluations, std::span<const double> phi,
                                        const christoffel_field& field, std::uint64_t seed) {
  if (fact.singular()) throw degenerate_measure_error("pairwise_exchange_pass: degenerate measure");
  const index_t m = measure.size();
  const auto nb = static_cast<index_t>(fact.ortho_coeffs->cols());
  std::vector<double> mu(measure.weights().begin(), measure.weights().end());

  // Candidate pool: largest-K candidates, plus the heaviest and the lowest-K
  // support points.
  const index_t pool = 2 * nb;
  std::vector<index_t> by_k(m);
  std::iota(by_k.begin(), by_k.end(), index_t{0});
  std::stable_sort(by_k.begin(), by_k.end(),
                   [&](index_t a, index_t b) { return field.values[a] > field.values[b]; });
  std::vector<index_t> support;
  for (index_t i = 0; i < m; ++i) {
    if (mu[i] > 0.0) support.push_back(i);
  }
  std::vector<index_t> chosen;
  for (index_t j = 0; j < std::min(pool, m); ++j) {
    if (phi[by_k[j]] != infinity) chosen.push_back(by_k[j]);
  }
  if (support.size() <= 3 * pool) {
    chosen.insert(chosen.end(), support.begin(), support.end());
  } else {
    std::vector<index_t> s = support;
    std::stable_sort(s.begin(), s.end(), [&](index_t a, index_t b) { return mu[a] > mu[b]; });
    chosen.insert(chosen.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(pool));
    std::stable_sort(s.begin(), s.end(),
                     [&](index_t a, index_t b) { return field.values[a] < field.values[b]; });
    chosen.insert(chosen.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(2 * pool));
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  std::mt19937_64 rng(seed);
  std::shuffle(chosen.begin(), chosen.end(), rng);

  // Weighted orthonormal coordinates g_i (columns); the information matrix is
  // the identity at the current design and H tracks its inverse.
  const auto e = static_cast<Eigen::Index>(chosen.size());
  const auto nbi = static_cast<Eigen::Index>(nb);
  cmatrix g(nbi, e);
  for (Eigen::Index c = 0; c < e; ++c) {
    const auto i = static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(c)]);
    const double s = std::exp(-fact.degree * phi[static_cast<std::size_t>(i)]);
    g.col(c) = (s * (evaluations.row(i) * *fact.ortho_coeffs)).transpose();
  }
  cmatrix h = cmatrix::Identity(nbi, nbi);
  cvector hk(nbi), hl(nbi);

  for (Eigen::Index a = 0; a < e; ++a) {
    for (Eigen::Index b = 0; b < e; ++b) {
      if (a == b) continue;
      const index_t k = chosen[static_cast<std::size_t>(a)];
      const index_t l = chosen[static_cast<std::size_t>(b)];
      if (mu[k] <= 0.0 && mu[l] <= 0.0) continue;
      hk.noalias() = h * g.col(a);
      hl.noalias() = h * g.col(b);
      const double dk = g.col(a).dot(hk).real();
      const double dl = g.col(b).dot(hl).real();
      const double dkl2 = std::norm(g.col(a).dot(hl));
      const double den = dk * dl - dkl2;
      if (!(den > 1e-12 * dk * dl)) continue;
      double alpha = (dl - dk) / (2.0 * den);
      alpha = std::clamp(alpha, -mu[l], mu[k]);
      if (alpha == 0.0) continue;
      // Moves alpha of mass from k to l: M += alpha (g_l g_l^* - g_k g_k^*).
      const double ratio = (1.0 + alpha * dl) * (1.0 - alpha * dk) + alpha * alpha * dkl2;
      const double den1 = 1.0 + alpha * dl;
      if (!(ratio > 1.0) || !(den1 > 1e-12)) continue;
      cmatrix h1 = h - (alpha / den1) * hl * hl.adjoint();
      const cvector u = h1 * g.col(a);
      const double den2 = 1.0 - alpha * g.col(a).dot(u).real();
      if (!(den2 > 1e-12)) continue;
      h = h1 + (alpha / den2) * u * u.adjoint();
      mu[k] -= alpha;
      mu[l] += alpha;
      if (mu[k] < support_threshold * 1e-2) mu[k] = 0.0;
      if (mu[l] < support_threshold * 1e-2) mu[l] = 0.0;
    }
  }
  return discrete_measure::normalized(measure.candidates_ptr(), std::move(mu));
}

void check_admissible(const cmatrix& evaluations, std::span<const double> phi, index_t basis_size) {
  std::vector<Eigen::Index> rows;
  for (index_t i = 0; i < phi.size(); ++i) {
    if (phi[i] != infinity) rows.push_back(static_cast<Eigen::Index>(i));
  }
  if (rows.size() < basis_size) {
    throw admissibility_error(fmt::format("only {} candidates with w > 0, need at least N = {}",
                                          rows.size(), basis_size));
  }
  cmatrix v(static_cast<Eigen::Index>(rows.size()), evaluations.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) v.row(static_cast<Eigen::Index>(r)) = evaluations.row(rows[r]);
  Eigen::ColPivHouseholderQR<cmatrix> qr(v);
  qr.setThreshold(singular_pivot_ratio);
  if (static_cast<index_t>(qr.rank()) < basis_size) {
    throw admissibility_error(fmt::format("candidate Vandermonde has rank {} < N = {}", qr.rank(), basis_size));
  }
}

namespace {

double support_deviation_of(const discrete_measure& measure, const christoffel_field& field, double n_dim) {
  double dev = 0.0;
  for (index_t i = 0; i < measure.size(); ++i) {
    if (measure.weight(i) > support_report_threshold) {
      dev = std::max(dev, std::abs(field.values[i] - n_dim) / n_dim);
    }
  }
  return dev;
}

}  // namespace

design_evaluation evaluate_design(const discrete_measure& measure, const cmatrix& evaluations,
                                  const admissible_weight& weight, const graded_basis& basis) {
  design_evaluation ev;
  ev.fact = gram_from_evaluations(evaluations, measure.weights(), weight.phi(), basis.degree());
  if (ev.fact.singular()) throw degenerate_measure_error("design measure is degenerate on P_n");
  ev.field = christoffel_from_evaluations(ev.fact, evaluations, weight.phi());
  const double n_dim = static_cast<double>(basis.size());
  ev.kw_gap = ev.field.max_value - n_dim;
  ev.support_deviation = support_deviation_of(measure, ev.field, n_dim);
  return ev;
}

design_result solve_optimal(std::shared_ptr<const point_set> candidates, const admissible_weight& weight,
                            const graded_basis& basis, const solver_config& config) {
  config.validate();
  if (weight.size() != candidates->size()) {
    throw std::invalid_argument("solve_optimal: weight must be tabulated on the candidate set");
  }
  const cmatrix v = basis.vandermonde(*candidates);
  const index_t nb = basis.size();
  const double n_dim = static_cast<double>(nb);
  check_admissible(v, weight.phi(), nb);

  std::vector<double> init(candidates->size(), 0.0);
  for (index_t i = 0; i < init.size(); ++i) {
    if (!weight.vanishes(i)) init[i] = 1.0;
  }
  discrete_measure mu = discrete_measure::normalized(candidates, std::move(init));

  design_result best{mu, infinity, -infinity, 0, {}, false, infinity};
  std::vector<trace_entry> trace;
  std::vector<double> gap_history;
  int last_prune = -1;
  int iteration = 0;
  bool converged = false;

  while (true) {
    design_evaluation ev = evaluate_design(mu, v, weight, basis);
    trace.push_back({iteration, ev.fact.log_det, ev.kw_gap});
    gap_history.push_back(ev.kw_gap);
    log::debug("degree {} iter {} log_det {:.17g} gap {:.3e} support dev {:.3e}", basis.degree(), iteration,
               ev.fact.log_det, ev.kw_gap, ev.support_deviation);

    converged = ev.kw_gap <= config.tolerance * n_dim &&
                ev.support_deviation <= 10.0 * config.tolerance;
    if (converged || ev.kw_gap < best.kw_gap) {
      best.measure = mu;
      best.kw_gap = ev.kw_gap;
      best.log_det = ev.fact.log_det;
      best.support_deviation = ev.support_deviation;
    }
    if (converged || iteration >= config.max_iterations) break;

    // Stall: relative gap improvement below 1e-10 over the last 100 iterations.
    if (iteration >= 100 && iteration - last_prune >= 100 && config.prune_threshold > 0.0) {
      const double before = gap_history[static_cast<std::size_t>(iteration - 100)];
      if (before - ev.kw_gap <= 1e-10 * std::abs(before)) {
        std::vector<double> w(mu.weights().begin(), mu.weights().end());
        bool changed = false;
        for (double& x : w) {
          if (x > 0.0 && x < config.prune_threshold) {
            x = 0.0;
            changed = true;
          }
        }
        last_prune = iteration;
        if (changed) {
          discrete_measure pruned = discrete_measure::normalized(candidates, std::move(w));
          if (!gram_from_evaluations(v, pruned.weights(), weight.phi(), basis.degree()).singular()) {
            mu = std::move(pruned);
            ++iteration;
            continue;
          }
        }
      }
    }

    switch (config.method) {
      case algorithm::multiplicative:
        mu = multiplicative_step(mu, ev.field);
        break;
      case algorithm::exchange:
        mu = exchange_step(mu, ev.field, nb);
        break;
      case algorithm::hybrid:
        if ((iteration + 1) % config.exchange_period == 0) {
          mu = exchange_step(mu, ev.field, nb);
        } else if (iteration < config.warmup_iterations) {
          mu = multiplicative_step(mu, ev.field);
        } else {
          mu = pairwise_exchange_pass(mu, ev.fact, v, weight.phi(), ev.field,
                                      config.seed + static_cast<std::uint64_t>(iteration));
        }
        break;
    }
    ++iteration;
  }

  best.iterations = iteration;
  best.trace = std::move(trace);
  best.converged = converged;
  if (converged) {
    log::info("degree {}: converged after {} iterations, gap {:.3e}", basis.degree(), iteration, best.kw_gap);
  } else {
    log::info("degree {}: not converged after {} iterations, best gap {:.3e}", basis.degree(), iteration,
              best.kw_gap);
  }
  return best;
}

double kw_certificate(const design_result& result, const point_set& fine_mesh,
                      const admissible_weight& mesh_weight, const admissible_weight& weight,
                      const graded_basis& basis) {
  const gram_factorization fact = gram(basis, result.measure, weight);
  const christoffel_field f = christoffel(fact, basis, fine_mesh, mesh_weight);
  return f.max_value - static_cast<double>(basis.size());
}

}  // namespace optmeas::design
