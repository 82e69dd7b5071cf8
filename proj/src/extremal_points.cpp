#include <optmeas/extremal_points.hpp>

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>
#include <fmt/format.h>

#include <optmeas/errors.hpp>
#include <optmeas/kernels.hpp>

namespace optmeas::extremal {

std::string to_string(family_kind k) {
  switch (k) {
    case family_kind::fekete_bruteforce: return "fekete_bruteforce";
    case family_kind::leja: return "leja";
    case family_kind::custom: return "custom";
  }
  return "custom";
}

double subset_count(index_t candidates, index_t size) {
  if (size > candidates) return 0.0;
  // lgamma keeps huge counts finite; exact enough around the guard.
  const double m = static_cast<double>(candidates);
  const double k = static_cast<double>(size);
  return std::round(std::exp(std::lgamma(m + 1) - std::lgamma(k + 1) - std::lgamma(m - k + 1)));
}

namespace {

cmatrix weighted_rows(const cmatrix& v, std::span<const double> phi, int degree) {
  cmatrix w = v;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    const double p = phi[static_cast<std::size_t>(i)];
    if (p == infinity) {
      w.row(i).setZero();
    } else if (p != 0.0) {
      w.row(i) *= std::exp(-degree * p);
    }
  }
  return w;
}

}  // namespace

point_family brute_force_fekete(const point_set& candidates, const admissible_weight& weight,
                                const graded_basis& basis) {
  if (weight.size() != candidates.size()) throw std::invalid_argument("fekete: weight/candidate size mismatch");
  const index_t nb = basis.size();
  const double count = subset_count(candidates.size(), nb);
  if (count > max_fekete_subsets) {
    throw admissibility_error(fmt::format("brute-force Fekete would enumerate {:.0f} subsets (> 1e6); use leja",
                                          count));
  }
  if (candidates.size() < nb) {
    throw admissibility_error(fmt::format("{} candidates cannot hold N = {} Fekete points", candidates.size(), nb));
  }
  const cmatrix rows = weighted_rows(basis.vandermonde(candidates), weight.phi(), basis.degree());
  kernels::subset_result best = kernels::max_det_subset(rows, nb);
  if (best.indices.empty() || best.log_value == -infinity) {
    throw admissibility_error("every N-subset of the candidates is degenerate");
  }
  point_family f;
  f.kind = family_kind::fekete_bruteforce;
  f.candidate_indices = best.indices;
  f.points = candidates.subset(best.indices, "fekete");
  f.degree = basis.degree();
  std::vector<double> phi_sub;
  for (index_t i : best.indices) phi_sub.push_back(weight.phi(i));
  // Recompute through the public routine so the stored value matches it.
  f.log_weighted_vdm = log_abs_vdm(basis, f.points, phi_sub);
  return f;
}

point_family leja_sequence(const point_set& candidates, const admissible_weight& weight,
                           const graded_basis& basis, index_t count) {
  if (weight.size() != candidates.size()) throw std::invalid_argument("leja: weight/candidate size mismatch");
  const index_t nb = basis.size();
  if (count > nb) throw std::invalid_argument(fmt::format("leja: count {} exceeds N = {}", count, nb));
  if (count > candidates.size()) {
    throw admissibility_error(fmt::format("leja: {} candidates cannot hold {} points", candidates.size(), count));
  }
  // Schur complements of the weighted Vandermonde: after m steps, column m of
  // `work` holds (for unchosen rows) the weighted residual of p_{m+1} after
  // interpolation at the chosen points.
  cmatrix work = weighted_rows(basis.vandermonde(candidates), weight.phi(), basis.degree());
  const auto m_rows = static_cast<Eigen::Index>(candidates.size());
  std::vector<bool> used(candidates.size(), false);

  point_family f;
  f.kind = family_kind::leja;
  f.degree = basis.degree();
  double total = 0.0;
  for (index_t step = 0; step < count; ++step) {
    const auto col = static_cast<Eigen::Index>(step);
    Eigen::Index pick = -1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m_rows; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      const double a = std::abs(work(i, col));
      if (step == 0) {
        // Largest w^n, then largest |x|, then largest index.
        const double tol = kernels::detail::tie_tolerance * std::max(1.0, best);
        if (pick < 0 || a > best + tol) {
          pick = i;
          best = a;
        } else if (a >= best - tol) {
          const double ni = candidates.point(static_cast<index_t>(i)).squaredNorm();
          const double np = candidates.point(static_cast<index_t>(pick)).squaredNorm();
          if (ni >= np - 1e-15) {
            pick = i;
            best = std::max(best, a);
          }
        }
      } else if (pick < 0 || a > best + kernels::detail::tie_tolerance * std::max(best, 1e-300)) {
        pick = i;
        best = a;
      }
    }
    const complex pivot = work(pick, col);
    if (pick < 0 || std::abs(pivot) == 0.0 || !std::isfinite(std::abs(pivot))) {
      throw degenerate_measure_error(fmt::format("leja: every remaining candidate gives a zero increment at step {}",
                                                 step + 1));
    }
    used[static_cast<std::size_t>(pick)] = true;
    const double inc = std::log(std::abs(pivot));
    f.increments.push_back(inc);
    total += inc;
    f.candidate_indices.push_back(static_cast<index_t>(pick));
    // Eliminate column `col` from the unchosen rows.
    if (step + 1 < count) {
      const Eigen::Index rest = work.cols() - col - 1;
      const auto pivot_row = work.row(pick).segment(col + 1, rest).eval();
      for (Eigen::Index i = 0; i < m_rows; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        const complex factor = work(i, col) / pivot;
        if (factor != 0.0) work.row(i).segment(col + 1, rest) -= factor * pivot_row;
      }
    }
  }
  f.points = candidates.subset(f.candidate_indices, "leja");
  f.log_weighted_vdm = total;
  return f;
}

discrete_measure fekete_measure(const point_family& family, std::shared_ptr<const point_set> candidates) {
  return discrete_measure::uniform_on(std::move(candidates), family.candidate_indices);
}

cvector lagrange_basis::evaluate(const graded_basis& basis, const cvector& x) const {
  return coefficients.transpose() * basis.evaluate(x);
}

lagrange_basis make_lagrange_basis(const point_set& nodes, const graded_basis& basis) {
  if (nodes.size() != basis.size()) {
    throw std::invalid_argument(fmt::format("lagrange basis needs N = {} nodes, got {}", basis.size(), nodes.size()));
  }
  const cmatrix v = basis.vandermonde(nodes);
  Eigen::FullPivLU<cmatrix> lu(v);
  lu.setThreshold(singular_pivot_ratio);
  if (!lu.isInvertible()) throw degenerate_measure_error("lagrange basis: nodes are not unisolvent");
  const auto nb = static_cast<Eigen::Index>(basis.size());
  return {nodes, lu.solve(cmatrix::Identity(nb, nb))};
}

double lebesgue_constant(const lagrange_basis& lb, const graded_basis& basis, const point_set& mesh) {
  if (mesh.empty()) throw std::invalid_argument("lebesgue_constant: empty mesh");
  return kernels::lagrange_sweep(basis.vandermonde(mesh), lb.coefficients).lebesgue;
}

double fejer_sum(const lagrange_basis& lb, const graded_basis& basis, const point_set& mesh) {
  if (mesh.empty()) throw std::invalid_argument("fejer_sum: empty mesh");
  return kernels::lagrange_sweep(basis.vandermonde(mesh), lb.coefficients).fejer;
}

std::vector<double> lagrange_sup_norms(const lagrange_basis& lb, const graded_basis& basis,
                                       const point_set& mesh) {
  if (mesh.empty()) throw std::invalid_argument("lagrange_sup_norms: empty mesh");
  return kernels::lagrange_sweep(basis.vandermonde(mesh), lb.coefficients).max_abs;
}

std::vector<lebesgue_row> lebesgue_growth_diagnostic(const std::vector<point_family>& families,
                                                     int dimension, const point_set& mesh) {
  std::vector<lebesgue_row> rows;
  int previous = 0;
  for (const auto& fam : families) {
    if (fam.degree < 1 || fam.degree <= previous) {
      throw std::invalid_argument("lebesgue_growth_diagnostic: degrees must be >= 1 and strictly increasing");
    }
    previous = fam.degree;
    const graded_basis basis(dimension, fam.degree);
    const lagrange_basis lb = make_lagrange_basis(fam.points, basis);
    const double lam = lebesgue_constant(lb, basis, mesh);
    rows.push_back({fam.degree, lam, std::pow(lam, 1.0 / fam.degree)});
  }
  return rows;
}

}  // namespace optmeas::extremal
