#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace optmeas::runner {

struct invariant_result {
  std::string name;
  int cases = 0;
  // Worst error over the cases, in the invariant's own metric.
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Randomized cross-module invariants: mass identity, det monotonicity,
// change-of-basis law, Gram-VDM identity, Christoffel cross-check, derivative
// and concavity checks. `tolerance_override` replaces every tolerance.
std::vector<invariant_result> run_invariant_suite(std::uint64_t seed,
                                                  std::optional<double> tolerance_override = std::nullopt);

std::string format_invariant_table(const std::vector<invariant_result>& results);

}  // namespace optmeas::runner
