#pragma once

#include <cstdint>
#include <span>

#include "mobmatch/model.hpp"

namespace mobmatch {

// Maximizes sum a_ij x_ij subject to one provider per traveler and
// provider capacities. The result is integral and exact; among multiple
// optima the lexicographically smallest match vector is returned
// (unmatched < provider 0 < provider 1 < ...).
Assignment solve_optimal_assignment(const UtilityMatrix& matrix,
                                    std::span<const int> capacities);

// Enumeration guard for brute_force_assignment: (J + 1)^I.
inline constexpr std::uint64_t kBruteForceLimit = 100'000'000;

// Exhaustive enumeration of every feasible assignment. Same tie-break as the
// solver. Throws Error{kTooLarge} when (J + 1)^I exceeds kBruteForceLimit.
Assignment brute_force_assignment(const UtilityMatrix& matrix,
                                  std::span<const int> capacities);

// Exact objective of a feasible assignment; infeasible input throws
// Error{kInvalidArgument}.
Money assignment_value(const UtilityMatrix& matrix, std::span<const int> capacities,
                       const Assignment& assignment);

}  // namespace mobmatch
