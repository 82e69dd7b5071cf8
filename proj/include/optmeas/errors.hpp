#pragma once

#include <stdexcept>
#include <string>

namespace optmeas {

// Raised when (d, n) produce a basis too large to materialize.
class size_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Raised when a measure is degenerate on P_n (singular Gram matrix).
class degenerate_measure_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the candidate set cannot carry a nondegenerate measure, or an
// oracle-scale guard is exceeded.
class admissibility_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace optmeas
