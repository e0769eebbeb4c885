#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mobmatch/money.hpp"

namespace mobmatch {

// Travelers and providers are identified by their dense position in the
// instance (0..I-1 and 0..J-1).
struct Traveler {
  std::string group;  // type-group label, e.g. "students"
  Money willingness_scale;
  std::vector<Proportion> predispositions;  // one per provider

  // Largest predisposition over all providers; never stored.
  Proportion max_predisposition() const;
};

struct Provider {
  std::string label;
  int capacity = 1;
  Proportion op_type = Proportion::One();  // in (0, 1]
  Money cost_scale;
};

struct PaymentBounds {
  Money lower;
  Money upper;
};

// Dense I x J matrix of pair payoffs. Immutable once built.
class UtilityMatrix {
 public:
  UtilityMatrix() = default;
  UtilityMatrix(std::size_t rows, std::size_t cols, std::vector<Money> entries);

  static UtilityMatrix FromRows(const std::vector<std::vector<Money>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Money at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const Money> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }

  // Largest absolute entry, used to bound path lengths in the solvers.
  std::int64_t max_abs_micros() const;

  bool operator==(const UtilityMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Money> entries_;
};

struct BalanceReport {
  std::int64_t total_capacity = 0;
  std::size_t travelers = 0;
  bool balanced() const { return total_capacity == static_cast<std::int64_t>(travelers); }
};

class Instance {
 public:
  // Validates every invariant; throws Error{kInvalidArgument} on violation.
  Instance(std::vector<Traveler> travelers, std::vector<Provider> providers,
           PaymentBounds bounds,
           std::optional<UtilityMatrix> payoff_override = std::nullopt);

  std::size_t num_travelers() const { return travelers_.size(); }
  std::size_t num_providers() const { return providers_.size(); }
  const std::vector<Traveler>& travelers() const { return travelers_; }
  const std::vector<Provider>& providers() const { return providers_; }
  const Traveler& traveler(std::size_t i) const { return travelers_.at(i); }
  const Provider& provider(std::size_t j) const { return providers_.at(j); }
  const PaymentBounds& payment_bounds() const { return bounds_; }
  const std::optional<UtilityMatrix>& payoff_override() const { return override_; }
  bool has_override() const { return override_.has_value(); }

  std::vector<int> capacities() const;
  // Sum of capacities against I; reported, never enforced.
  BalanceReport balance() const;

  bool operator==(const Instance&) const;

 private:
  std::vector<Traveler> travelers_;
  std::vector<Provider> providers_;
  PaymentBounds bounds_;
  std::optional<UtilityMatrix> override_;
};

// theta_ij * V_i. Throws Error{kInvalidArgument} when provider_index >= J.
Money valuation(const Traveler& traveler, std::size_t provider_index);
// delta_j * C_j.
Money cost(const Provider& provider);

// Override verbatim if present, else valuation(i, j) - cost(j).
UtilityMatrix build_utility_matrix(const Instance& instance);

// Gross terms the pricing mechanism works with. For override instances the
// pair payoff is taken as the traveler's gross value and provider costs as
// zero, so a_ij = v_ij - c_j still holds.
Money gross_valuation(const Instance& instance, std::size_t i, std::size_t j);
Money gross_cost(const Instance& instance, std::size_t j);

// Unmatched travelers sort first (std::optional ordering), so the
// lexicographically smallest match vector prefers leaving travelers out.
using Match = std::optional<std::size_t>;

struct Assignment {
  std::vector<Match> matches;
  Money objective;
  bool feasible = false;

  std::size_t num_matched() const;
  std::vector<int> loads(std::size_t providers) const;
  bool operator==(const Assignment&) const = default;
};

// Builds an Assignment, computing feasibility (one provider per traveler,
// loads within capacity, indices in range) and the exact objective.
Assignment make_assignment(const UtilityMatrix& matrix, std::span<const int> capacities,
                           std::vector<Match> matches);

}  // namespace mobmatch
