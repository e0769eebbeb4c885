#include "mobmatch/duality.hpp"

#include <algorithm>

#include "dual_labels.hpp"
#include "mobmatch/error.hpp"

namespace mobmatch {

namespace {

void CheckDims(const UtilityMatrix& matrix, std::span<const int> capacities,
               const Assignment& assignment, const DualSolution& dual) {
  if (capacities.size() != matrix.cols() || assignment.matches.size() != matrix.rows() ||
      dual.phi.size() != matrix.rows() || dual.psi.size() != matrix.cols()) {
    throw Error(ErrorKind::kInvalidArgument, "audit inputs have mismatched dimensions");
  }
}

std::string Pair(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

const char* ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kInfeasibleAssignment: return "infeasible-assignment";
    case ViolationKind::kNegativeTravelerGain: return "negative-traveler-gain";
    case ViolationKind::kNegativeProviderGain: return "negative-provider-gain";
    case ViolationKind::kBlockingPair: return "blocking-pair";
    case ViolationKind::kDualityGap: return "duality-gap";
    case ViolationKind::kMatchedPairNotTight: return "matched-pair-not-tight";
    case ViolationKind::kUnmatchedTravelerGain: return "unmatched-traveler-gain";
    case ViolationKind::kUnderfilledProviderGain: return "underfilled-provider-gain";
  }
  return "unknown";
}

bool AuditReport::mentions_traveler(std::size_t i) const {
  return std::any_of(violations.begin(), violations.end(),
                     [i](const Violation& v) { return v.traveler == i; });
}

bool AuditReport::mentions_provider(std::size_t j) const {
  return std::any_of(violations.begin(), violations.end(),
                     [j](const Violation& v) { return v.provider == j; });
}

Money dual_objective(const DualSolution& dual, std::span<const int> capacities) {
  Money total;
  for (const Money& p : dual.phi) total += p;
  for (std::size_t j = 0; j < dual.psi.size(); ++j) total += dual.psi[j] * capacities[j];
  return total;
}

DualSolution solve_dual(const UtilityMatrix& matrix, std::span<const int> capacities,
                        const Assignment& primal, DualSelection selection) {
  const Assignment checked = make_assignment(matrix, capacities, primal.matches);
  if (!checked.feasible) {
    throw Error(ErrorKind::kInvalidArgument, "cannot price an infeasible assignment");
  }
  const auto labels = detail::ShortestPathDual(
      matrix, capacities, checked.matches,
      selection == DualSelection::kTravelerOptimal ? detail::DualExtreme::kTravelerOptimal
                                                   : detail::DualExtreme::kProviderOptimal);
  if (!labels) {
    throw Error(ErrorKind::kNotOptimal,
                "assignment is not optimal: no dual satisfies complementary slackness");
  }
  DualSolution dual;
  for (auto v : labels->phi) dual.phi.push_back(Money::FromMicros(v));
  for (auto v : labels->psi) dual.psi.push_back(Money::FromMicros(v));
  dual.gap = checked.objective - dual_objective(dual, capacities);
  if (!dual.gap.is_zero()) {
    throw Error(ErrorKind::kNotOptimal, "duality gap " + dual.gap.ToShort() + " at optimum");
  }
  return dual;
}

AuditReport check_stability(const UtilityMatrix& matrix, std::span<const int> capacities,
                            const Assignment& assignment, const DualSolution& dual) {
  CheckDims(matrix, capacities, assignment, dual);
  AuditReport report;
  const Assignment checked = make_assignment(matrix, capacities, assignment.matches);
  if (!checked.feasible) {
    report.violations.push_back({ViolationKind::kInfeasibleAssignment, std::nullopt,
                                 std::nullopt, Money::Zero(),
                                 "assignment breaks a traveler or capacity constraint"});
  }
  for (std::size_t i = 0; i < dual.phi.size(); ++i) {
    if (dual.phi[i].is_negative()) {
      report.violations.push_back({ViolationKind::kNegativeTravelerGain, i, std::nullopt,
                                   -dual.phi[i], "phi_" + std::to_string(i) + " < 0"});
    }
  }
  for (std::size_t j = 0; j < dual.psi.size(); ++j) {
    if (dual.psi[j].is_negative()) {
      report.violations.push_back({ViolationKind::kNegativeProviderGain, std::nullopt, j,
                                   -dual.psi[j], "psi_" + std::to_string(j) + " < 0"});
    }
  }
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const Money deficit = matrix.at(i, j) - (dual.phi[i] + dual.psi[j]);
      if (deficit.is_positive()) {
        report.violations.push_back({ViolationKind::kBlockingPair, i, j, deficit,
                                     "pair " + Pair(i, j) + " blocks by " + deficit.ToShort()});
      }
    }
  }
  report.primal_value = checked.objective;
  report.dual_value = dual_objective(dual, capacities);
  if (report.primal_value != report.dual_value) {
    const Money gap = report.dual_value - report.primal_value;
    report.violations.push_back({ViolationKind::kDualityGap, std::nullopt, std::nullopt, gap,
                                 "dual value " + report.dual_value.ToShort() +
                                     " != assignment value " + report.primal_value.ToShort()});
  }
  report.ok = report.violations.empty();
  return report;
}

AuditReport check_complementary_slackness(const UtilityMatrix& matrix,
                                          std::span<const int> capacities,
                                          const Assignment& assignment,
                                          const DualSolution& dual) {
  CheckDims(matrix, capacities, assignment, dual);
  AuditReport report;
  const Assignment checked = make_assignment(matrix, capacities, assignment.matches);
  report.primal_value = checked.objective;
  report.dual_value = dual_objective(dual, capacities);
  const std::vector<int> loads = checked.loads(matrix.cols());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const Match& m = checked.matches[i];
    if (m && *m < matrix.cols()) {
      const Money slack = dual.phi[i] + dual.psi[*m] - matrix.at(i, *m);
      if (!slack.is_zero()) {
        report.violations.push_back({ViolationKind::kMatchedPairNotTight, i, *m, slack,
                                     "matched pair " + Pair(i, *m) + " has slack " +
                                         slack.ToShort()});
      }
    } else if (!m && !dual.phi[i].is_zero()) {
      report.violations.push_back({ViolationKind::kUnmatchedTravelerGain, i, std::nullopt,
                                   dual.phi[i],
                                   "unmatched traveler " + std::to_string(i) + " has phi " +
                                       dual.phi[i].ToShort()});
    }
  }
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    if (loads[j] < capacities[j] && !dual.psi[j].is_zero()) {
      report.violations.push_back({ViolationKind::kUnderfilledProviderGain, std::nullopt, j,
                                   dual.psi[j],
                                   "provider " + std::to_string(j) + " at " +
                                       std::to_string(loads[j]) + "/" +
                                       std::to_string(capacities[j]) + " has psi " +
                                       dual.psi[j].ToShort()});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

std::optional<Money> PaymentMatrix::at(std::size_t i, std::size_t j) const {
  auto it = payments.find({i, j});
  if (it == payments.end()) return std::nullopt;
  return it->second;
}

PaymentMatrix extract_payments(const Instance& instance, const Assignment& assignment,
                               const DualSolution& dual) {
  if (assignment.matches.size() != instance.num_travelers() ||
      dual.phi.size() != instance.num_travelers() ||
      dual.psi.size() != instance.num_providers()) {
    throw Error(ErrorKind::kInvalidArgument, "payment inputs have mismatched dimensions");
  }
  const PaymentBounds& bounds = instance.payment_bounds();
  PaymentMatrix out;
  for (std::size_t i = 0; i < assignment.matches.size(); ++i) {
    if (!assignment.matches[i]) continue;
    const std::size_t j = *assignment.matches[i];
    const Money t = gross_valuation(instance, i, j) - dual.phi[i];
    if (t - gross_cost(instance, j) != dual.psi[j]) {
      throw Error(ErrorKind::kInternal, "payment for " + Pair(i, j) +
                                            " does not reproduce the provider gain");
    }
    if (t < bounds.lower || t > bounds.upper) {
      out.warnings.push_back("payment " + t.ToShort() + " for " + Pair(i, j) +
                             " outside [" + bounds.lower.ToShort() + ", " +
                             bounds.upper.ToShort() + "]");
    }
    out.payments.emplace(std::make_pair(i, j), t);
  }
  return out;
}

}  // namespace mobmatch
