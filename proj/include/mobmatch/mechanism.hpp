#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "mobmatch/model.hpp"

namespace mobmatch {

enum class AgentKind { kTraveler, kProvider };

struct AgentRef {
  AgentKind kind = AgentKind::kTraveler;
  std::size_t id = 0;

  bool operator==(const AgentRef&) const = default;
};

// A reported type: J predispositions for a traveler, a single operational
// type in (0, 1] for a provider.
struct Report {
  AgentRef agent;
  std::vector<Proportion> type;
};

std::vector<Report> truthful_reports(const Instance& instance);

// Gross valuations v_ij and per-match costs c_j, separated so transfers can
// be computed from the gross terms.
struct Market {
  UtilityMatrix valuations;
  std::vector<Money> costs;
  std::vector<int> capacities;

  UtilityMatrix payoffs() const;  // v_ij - c_j
};

Market true_market(const Instance& instance);
// Applies the reports to the instance's scales. Throws
// Error{kInvalidArgument} on a missing or duplicate report, out-of-range
// types, or a non-truthful report on an instance with a payoff override.
Market reported_market(const Instance& instance, std::span<const Report> reports);

// Optimal welfare with the given travelers and providers removed.
Money gross_welfare(const UtilityMatrix& matrix, std::span<const int> capacities,
                    const std::set<std::size_t>& excluded_travelers,
                    const std::set<std::size_t>& excluded_providers);

// Clarke pivot charge on truthful types: W(-i) - (W* - v_i(x*)).
Money clarke_charge_traveler(const Instance& instance, std::size_t i);
// Clarke compensation on truthful types: (W* + n_j c_j) - W(-j).
Money clarke_compensation_provider(const Instance& instance, std::size_t j);

struct MechanismOutcome {
  Assignment assignment;  // optimal on reported types
  std::vector<Money> traveler_charges;
  std::vector<Money> provider_compensations;
  std::vector<Money> traveler_utilities;  // evaluated on TRUE types
  std::vector<Money> provider_utilities;
  Money budget;  // sum of charges - sum of compensations

  bool operator==(const MechanismOutcome&) const = default;
};

// Builds the payoff matrix from the reports, solves it, and prices every
// agent with one exclusion solve each (I + J + 1 solves in total).
MechanismOutcome run_mechanism(const Instance& truth, std::span<const Report> reports);

}  // namespace mobmatch
