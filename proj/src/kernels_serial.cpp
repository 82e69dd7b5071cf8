#include <optmeas/kernels.hpp>

#include <stdexcept>

#include <Eigen/LU>

namespace optmeas::kernels {

namespace detail {

subset_result best_subset_with_first(const cmatrix& rows, index_t k, index_t first) {
  const auto m = static_cast<index_t>(rows.rows());
  const auto ki = static_cast<Eigen::Index>(k);
  subset_result best;
  if (k == 0 || first + k > m) return best;

  std::vector<index_t> comb(k);
  comb[0] = first;
  for (index_t j = 1; j < k; ++j) comb[j] = first + j;

  cmatrix sq(ki, rows.cols());
  Eigen::FullPivLU<cmatrix> lu(ki, ki);
  lu.setThreshold(singular_pivot_ratio);
  while (true) {
    for (index_t j = 0; j < k; ++j) sq.row(static_cast<Eigen::Index>(j)) = rows.row(static_cast<Eigen::Index>(comb[j]));
    lu.compute(sq.leftCols(ki));
    double v = -infinity;
    if (lu.isInvertible()) {
      v = 0.0;
      for (Eigen::Index i = 0; i < ki; ++i) v += std::log(std::abs(lu.matrixLU()(i, i)));
    }
    if (detail::strictly_better(v, best.log_value)) {
      best.log_value = v;
      best.indices = comb;
    }
    // Advance positions 1..k-1 to the next lexicographic combination.
    index_t pos = k;
    while (pos > 1) {
      --pos;
      if (comb[pos] < m - (k - pos)) break;
      if (pos == 1) return best;
    }
    if (k == 1) return best;
    ++comb[pos];
    for (index_t j = pos + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace detail

namespace serial {

void christoffel_sweep(const cmatrix& evaluations, const cmatrix& coeffs,
                       std::span<const double> phi, int degree, std::span<double> out) {
  const Eigen::Index m = evaluations.rows();
  const Eigen::Index nb = coeffs.cols();
  if (coeffs.rows() != evaluations.cols() || static_cast<Eigen::Index>(out.size()) != m ||
      static_cast<Eigen::Index>(phi.size()) != m) {
    throw std::invalid_argument("christoffel_sweep: size mismatch");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (phi[ui] == infinity) {
      out[ui] = 0.0;
      continue;
    }
    double s = 0.0;
    for (Eigen::Index j = 0; j < nb; ++j) {
      complex q = 0.0;
      for (Eigen::Index l = 0; l < coeffs.rows(); ++l) q += evaluations(i, l) * coeffs(l, j);
      s += std::norm(q);
    }
    out[ui] = s == 0.0 ? 0.0 : std::exp(std::log(s) - 2.0 * degree * phi[ui]);
  }
}

subset_result max_det_subset(const cmatrix& rows, index_t k) {
  subset_result best;
  const auto m = static_cast<index_t>(rows.rows());
  if (k == 0 || k > m) return best;
  for (index_t first = 0; first + k <= m; ++first) {
    subset_result r = detail::best_subset_with_first(rows, k, first);
    if (detail::strictly_better(r.log_value, best.log_value)) best = std::move(r);
  }
  return best;
}

lagrange_stats lagrange_sweep(const cmatrix& mesh_evaluations, const cmatrix& coeffs) {
  lagrange_stats st;
  const Eigen::Index nb = coeffs.cols();
  st.max_abs.assign(static_cast<std::size_t>(nb), 0.0);
  for (Eigen::Index i = 0; i < mesh_evaluations.rows(); ++i) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (Eigen::Index j = 0; j < nb; ++j) {
      complex l = 0.0;
      for (Eigen::Index r = 0; r < coeffs.rows(); ++r) l += mesh_evaluations(i, r) * coeffs(r, j);
      const double a = std::abs(l);
      s1 += a;
      s2 += a * a;
      auto& mx = st.max_abs[static_cast<std::size_t>(j)];
      mx = std::max(mx, a);
    }
    st.lebesgue = std::max(st.lebesgue, s1);
    st.fejer = std::max(st.fejer, s2);
  }
  return st;
}

}  // namespace serial

}  // namespace optmeas::kernels
