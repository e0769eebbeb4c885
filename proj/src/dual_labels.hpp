#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mobmatch/model.hpp"

namespace mobmatch::detail {

enum class DualExtreme { kTravelerOptimal, kProviderOptimal };

struct DualLabels {
  std::vector<std::int64_t> phi;  // micro-units, per traveler
  std::vector<std::int64_t> psi;  // micro-units, per provider
};

// The optimal duals for a feasible primal x are exactly the labellings p with
// p(root) = 0, p(i) = phi_i, p(j) = -psi_j satisfying the difference system
//   i -> j  weight -a_ij   (phi_i + psi_j >= a_ij)
//   j -> i  weight  a_ij   (equality on matched pairs)
//   i -> root, root -> j   weight 0 (nonnegativity)
//   root -> i  weight 0    (unmatched traveler earns nothing)
//   j -> root  weight 0    (provider below capacity earns nothing)
// Shortest distances from the root give the componentwise largest p, i.e.
// the traveler-optimal dual; distances into the root give the smallest.
// Returns nullopt when the system has a negative cycle (x is not optimal).
std::optional<DualLabels> ShortestPathDual(const UtilityMatrix& matrix,
                                           std::span<const int> capacities,
                                           std::span<const Match> matches,
                                           DualExtreme extreme);

}  // namespace mobmatch::detail
