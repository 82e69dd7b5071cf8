#include <optmeas/poly_basis.hpp>

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>
#include <fmt/format.h>

#include <optmeas/errors.hpp>

namespace optmeas {

namespace {

// Exponent vectors of total degree `degree` in descending lexicographic order.
void append_degree(int dimension, int degree, std::vector<multi_index>& out) {
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  auto rec = [&](auto&& self, int k, int remaining) -> void {
    if (k == dimension - 1) {
      e[static_cast<std::size_t>(k)] = remaining;
      out.push_back({e, degree});
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      e[static_cast<std::size_t>(k)] = v;
      self(self, k + 1, remaining - v);
    }
  };
  rec(rec, 0, degree);
}

}  // namespace

index_t basis_size(int dimension, int degree) {
  if (dimension < 1) throw std::invalid_argument("basis dimension must be >= 1");
  if (degree < 0) throw std::invalid_argument("basis degree must be >= 0");
  // binom(d + i, i) is an integer at every step.
  unsigned long long c = 1;
  for (int i = 1; i <= degree; ++i) {
    unsigned long long num = 0;
    if (__builtin_mul_overflow(c, static_cast<unsigned long long>(dimension + i), &num)) {
      throw size_error(fmt::format("basis size binom({}+{},{}) overflows", dimension, degree, degree));
    }
    c = num / static_cast<unsigned long long>(i);
  }
  return static_cast<index_t>(c);
}

graded_basis::graded_basis(int dimension, int degree) : dimension_(dimension), degree_(degree) {
  const index_t n_size = basis_size(dimension, degree);
  if (n_size > max_size) {
    throw size_error(fmt::format("basis of dimension {} degree {} has {} elements (cap {})",
                                 dimension, degree, n_size, max_size));
  }
  indices_.reserve(n_size);
  for (int k = 0; k <= degree; ++k) append_degree(dimension, k, indices_);
  for (const auto& mi : indices_) degree_sum_ += mi.total_degree;
  // The degree sum must agree with d n N / (d + 1).
  const long long closed = static_cast<long long>(dimension) * degree *
                           static_cast<long long>(n_size) / (dimension + 1);
  if (indices_.size() != n_size || closed != degree_sum_) {
    throw std::logic_error("graded_basis: inconsistent enumeration");
  }
}

void graded_basis::evaluate_into(const complex* point, Eigen::Index stride, complex* out,
                                 std::vector<complex>& powers) const {
  const auto width = static_cast<std::size_t>(degree_ + 1);
  powers.resize(width * static_cast<std::size_t>(dimension_));
  for (int k = 0; k < dimension_; ++k) {
    complex* row = powers.data() + static_cast<std::size_t>(k) * width;
    const complex z = point[k * stride];
    row[0] = 1.0;
    for (std::size_t e = 1; e < width; ++e) row[e] = row[e - 1] * z;
  }
  for (std::size_t j = 0; j < indices_.size(); ++j) {
    complex v = 1.0;
    const auto& ex = indices_[j].exponents;
    for (int k = 0; k < dimension_; ++k) {
      const int e = ex[static_cast<std::size_t>(k)];
      if (e != 0) v *= powers[static_cast<std::size_t>(k) * width + static_cast<std::size_t>(e)];
    }
    out[j] = v;
  }
}

cvector graded_basis::evaluate(const cvector& point) const {
  if (point.size() != dimension_) {
    throw std::invalid_argument(fmt::format("point has {} coordinates, basis expects {}",
                                            point.size(), dimension_));
  }
  cvector out(static_cast<Eigen::Index>(size()));
  std::vector<complex> powers;
  evaluate_into(point.data(), 1, out.data(), powers);
  return out;
}

cmatrix graded_basis::vandermonde(const point_set& points) const {
  if (!points.empty() && points.dimension() != dimension_) {
    throw std::invalid_argument(fmt::format("point set has dimension {}, basis expects {}",
                                            points.dimension(), dimension_));
  }
  const auto m = static_cast<Eigen::Index>(points.size());
  const auto nb = static_cast<Eigen::Index>(size());
  // Row-major scratch so each point writes a contiguous row.
  Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> v(m, nb);
  const cmatrix& c = points.coords();
#pragma omp parallel
  {
    std::vector<complex> powers;
#pragma omp for schedule(static)
    for (Eigen::Index i = 0; i < m; ++i) {
      evaluate_into(c.data() + i, c.rows(), v.data() + i * nb, powers);
    }
  }
  return v;
}

graded_basis make_graded_basis(int dimension, int degree) { return graded_basis(dimension, degree); }

cvector evaluate_basis(const graded_basis& basis, const cvector& point) { return basis.evaluate(point); }

cmatrix vandermonde(const graded_basis& basis, const point_set& points) {
  return basis.vandermonde(points);
}

double log_abs_det(const cmatrix& square) {
  if (square.rows() != square.cols()) throw std::invalid_argument("log_abs_det: matrix not square");
  if (square.rows() == 0) return 0.0;
  Eigen::FullPivLU<cmatrix> lu(square);
  lu.setThreshold(singular_pivot_ratio);
  if (!lu.isInvertible()) return -infinity;
  double s = 0.0;
  for (Eigen::Index i = 0; i < square.rows(); ++i) s += std::log(std::abs(lu.matrixLU()(i, i)));
  return s;
}

double log_abs_vdm_leading(const graded_basis& basis, const point_set& points,
                           std::span<const double> phi) {
  const index_t m = points.size();
  if (m > basis.size()) throw std::invalid_argument("log_abs_vdm: more points than basis functions");
  if (!phi.empty() && phi.size() != m) throw std::invalid_argument("log_abs_vdm: weight size mismatch");
  double weight_part = 0.0;
  for (double f : phi) {
    if (f == infinity) return -infinity;
    weight_part += f;
  }
  if (m == 0) return 0.0;
  const cmatrix v = basis.vandermonde(points);
  const double ld = log_abs_det(v.leftCols(static_cast<Eigen::Index>(m)));
  if (ld == -infinity) return ld;
  return ld - static_cast<double>(basis.degree()) * weight_part;
}

double log_abs_vdm(const graded_basis& basis, const point_set& points, std::span<const double> phi) {
  if (points.size() != basis.size()) {
    throw std::invalid_argument(fmt::format("log_abs_vdm needs N = {} points, got {}",
                                            basis.size(), points.size()));
  }
  return log_abs_vdm_leading(basis, points, phi);
}

}  // namespace optmeas
