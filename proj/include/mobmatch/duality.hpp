#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mobmatch/model.hpp"

namespace mobmatch {

struct DualSolution {
  std::vector<Money> phi;  // per-traveler gain
  std::vector<Money> psi;  // per-unit provider gain
  Money gap;               // primal objective - dual objective

  bool operator==(const DualSolution&) const = default;
};

// sum phi_i + sum eps_j * psi_j
Money dual_objective(const DualSolution& dual, std::span<const int> capacities);

enum class DualSelection {
  kTravelerOptimal,  // maximizes every phi_i (minimizes every psi_j)
  kProviderOptimal,  // the opposite corner, used for audits and tests
};

// Optimal dual for an optimal primal. The optimal dual set is a lattice; the
// selection picks one of its two extreme corners. Throws Error{kNotOptimal}
// if `primal` is not optimal.
DualSolution solve_dual(const UtilityMatrix& matrix, std::span<const int> capacities,
                        const Assignment& primal,
                        DualSelection selection = DualSelection::kTravelerOptimal);

enum class ViolationKind {
  kInfeasibleAssignment,
  kNegativeTravelerGain,
  kNegativeProviderGain,
  kBlockingPair,
  kDualityGap,
  kMatchedPairNotTight,       // phi_i + psi_j != a_ij on a matched pair
  kUnmatchedTravelerGain,     // unmatched traveler with phi_i != 0
  kUnderfilledProviderGain,   // provider below capacity with psi_j != 0
};

const char* ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> traveler;
  std::optional<std::size_t> provider;
  Money amount;  // deficit for blocking pairs; signed dual - primal or phi + psi - a otherwise
  std::string detail;
};

struct AuditReport {
  bool ok = false;
  Money primal_value;
  Money dual_value;
  std::vector<Violation> violations;

  bool mentions_traveler(std::size_t i) const;
  bool mentions_provider(std::size_t j) const;
};

// Stability certificate: feasible assignment, nonnegative gains, no blocking
// pair, and total gains equal to the assignment's payoff.
AuditReport check_stability(const UtilityMatrix& matrix, std::span<const int> capacities,
                            const Assignment& assignment, const DualSolution& dual);

// Complementary slackness clauses, each violation reported on its own.
AuditReport check_complementary_slackness(const UtilityMatrix& matrix,
                                          std::span<const int> capacities,
                                          const Assignment& assignment,
                                          const DualSolution& dual);

struct PaymentMatrix {
  std::map<std::pair<std::size_t, std::size_t>, Money> payments;  // matched pairs only
  std::vector<std::string> warnings;  // payments outside the instance bounds

  std::optional<Money> at(std::size_t i, std::size_t j) const;
};

// t_ij = v_ij - phi_i on every matched pair, and checks t_ij - c_j == psi_j.
// A failed identity throws Error{kInternal}.
PaymentMatrix extract_payments(const Instance& instance, const Assignment& assignment,
                               const DualSolution& dual);

}  // namespace mobmatch
