#include <optmeas/kernels.hpp>

#include <stdexcept>

namespace optmeas::kernels {

namespace {
constexpr Eigen::Index row_block = 256;
}

void christoffel_sweep(const cmatrix& evaluations, const cmatrix& coeffs,
                       std::span<const double> phi, int degree, std::span<double> out) {
  const Eigen::Index m = evaluations.rows();
  if (coeffs.rows() != evaluations.cols() || static_cast<Eigen::Index>(out.size()) != m ||
      static_cast<Eigen::Index>(phi.size()) != m) {
    throw std::invalid_argument("christoffel_sweep: size mismatch");
  }
  const Eigen::Index blocks = (m + row_block - 1) / row_block;
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index start = b * row_block;
    const Eigen::Index len = std::min(row_block, m - start);
    const cmatrix q = evaluations.middleRows(start, len) * coeffs;
    for (Eigen::Index r = 0; r < len; ++r) {
      const auto ui = static_cast<std::size_t>(start + r);
      const double s = q.row(r).squaredNorm();
      out[ui] = (phi[ui] == infinity || s == 0.0) ? 0.0 : std::exp(std::log(s) - 2.0 * degree * phi[ui]);
    }
  }
}

subset_result max_det_subset(const cmatrix& rows, index_t k) {
  const auto m = static_cast<index_t>(rows.rows());
  if (k == 0 || k > m) return {};
  const auto firsts = static_cast<long long>(m - k + 1);
  std::vector<subset_result> per_first(static_cast<std::size_t>(firsts));
  // Chunks are indexed by the smallest subset index, so the reduction below
  // visits them in the same order as the serial scan.
#pragma omp parallel for schedule(dynamic, 1)
  for (long long f = 0; f < firsts; ++f) {
    per_first[static_cast<std::size_t>(f)] = detail::best_subset_with_first(rows, k, static_cast<index_t>(f));
  }
  subset_result best;
  for (auto& r : per_first) {
    if (detail::strictly_better(r.log_value, best.log_value)) best = std::move(r);
  }
  return best;
}

lagrange_stats lagrange_sweep(const cmatrix& mesh_evaluations, const cmatrix& coeffs) {
  const Eigen::Index m = mesh_evaluations.rows();
  const Eigen::Index nb = coeffs.cols();
  lagrange_stats st;
  st.max_abs.assign(static_cast<std::size_t>(nb), 0.0);
  const Eigen::Index blocks = (m + row_block - 1) / row_block;
#pragma omp parallel
  {
    lagrange_stats local;
    local.max_abs.assign(static_cast<std::size_t>(nb), 0.0);
#pragma omp for schedule(static)
    for (Eigen::Index b = 0; b < blocks; ++b) {
      const Eigen::Index start = b * row_block;
      const Eigen::Index len = std::min(row_block, m - start);
      const Eigen::MatrixXd a = (mesh_evaluations.middleRows(start, len) * coeffs).cwiseAbs();
      for (Eigen::Index r = 0; r < len; ++r) {
        local.lebesgue = std::max(local.lebesgue, a.row(r).sum());
        local.fejer = std::max(local.fejer, a.row(r).squaredNorm());
      }
      for (Eigen::Index j = 0; j < nb; ++j) {
        auto& mx = local.max_abs[static_cast<std::size_t>(j)];
        mx = std::max(mx, a.col(j).maxCoeff());
      }
    }
#pragma omp critical
    {
      st.lebesgue = std::max(st.lebesgue, local.lebesgue);
      st.fejer = std::max(st.fejer, local.fejer);
      for (std::size_t j = 0; j < st.max_abs.size(); ++j) st.max_abs[j] = std::max(st.max_abs[j], local.max_abs[j]);
    }
  }
  return st;
}

}  // namespace optmeas::kernels
