#pragma once

#include <complex>
#include <cstddef>
#include <limits>

#include <Eigen/Core>

namespace optmeas {

using complex = std::complex<double>;
using cvector = Eigen::VectorXcd;
using cmatrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic>;
using rvector = Eigen::VectorXd;

using index_t = std::size_t;

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Triangular/LU pivots at or below this fraction of the largest pivot mark a
// configuration as degenerate.
inline constexpr double singular_pivot_ratio = 1e-13;

// Candidate weights below this are treated as zero mass.
inline constexpr double support_threshold = 1e-14;

}  // namespace optmeas
