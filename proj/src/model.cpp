#include "mobmatch/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "mobmatch/error.hpp"

namespace mobmatch {

namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidArgument, what);
}

}  // namespace

Proportion Traveler::max_predisposition() const {
  Proportion best = Proportion::Zero();
  for (const auto& p : predispositions) best = std::max(best, p);
  return best;
}

UtilityMatrix::UtilityMatrix(std::size_t rows, std::size_t cols, std::vector<Money> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    Invalid("utility matrix expects " + std::to_string(rows_ * cols_) +
            " entries, got " + std::to_string(entries_.size()));
  }
}

UtilityMatrix UtilityMatrix::FromRows(const std::vector<std::vector<Money>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<Money> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) Invalid("ragged utility matrix rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return UtilityMatrix(rows.size(), cols, std::move(entries));
}

std::int64_t UtilityMatrix::max_abs_micros() const {
  std::int64_t best = 0;
  for (const auto& m : entries_) {
    if (m.micros() == std::numeric_limits<std::int64_t>::min()) {
      throw Error(ErrorKind::kOverflow, "payoff magnitude out of range");
    }
    best = std::max(best, std::abs(m.micros()));
  }
  return best;
}

Instance::Instance(std::vector<Traveler> travelers, std::vector<Provider> providers,
                   PaymentBounds bounds, std::optional<UtilityMatrix> payoff_override)
    : travelers_(std::move(travelers)),
      providers_(std::move(providers)),
      bounds_(bounds),
      override_(std::move(payoff_override)) {
  if (travelers_.empty()) Invalid("instance needs at least one traveler");
  if (providers_.empty()) Invalid("instance needs at least one provider");
  if (bounds_.lower > bounds_.upper) Invalid("payment bounds reversed");
  const std::size_t J = providers_.size();
  for (std::size_t i = 0; i < travelers_.size(); ++i) {
    const auto& t = travelers_[i];
    if (t.predispositions.size() != J) {
      Invalid("traveler " + std::to_string(i) + " has " +
              std::to_string(t.predispositions.size()) + " predispositions, expected " +
              std::to_string(J));
    }
    if (t.willingness_scale.is_negative()) {
      Invalid("traveler " + std::to_string(i) + " has negative willingness scale");
    }
  }
  for (std::size_t j = 0; j < J; ++j) {
    const auto& p = providers_[j];
    if (p.capacity < 1) Invalid("provider " + std::to_string(j) + " capacity must be >= 1");
    if (p.op_type.is_zero()) Invalid("provider " + std::to_string(j) + " type must be in (0, 1]");
    if (p.cost_scale.is_negative()) {
      Invalid("provider " + std::to_string(j) + " has negative cost scale");
    }
  }
  if (override_ && (override_->rows() != travelers_.size() || override_->cols() != J)) {
    Invalid("payoff override is " + std::to_string(override_->rows()) + "x" +
            std::to_string(override_->cols()) + ", instance is " +
            std::to_string(travelers_.size()) + "x" + std::to_string(J));
  }
}

std::vector<int> Instance::capacities() const {
  std::vector<int> caps;
  caps.reserve(providers_.size());
  for (const auto& p : providers_) caps.push_back(p.capacity);
  return caps;
}

BalanceReport Instance::balance() const {
  BalanceReport report;
  report.travelers = travelers_.size();
  for (const auto& p : providers_) report.total_capacity += p.capacity;
  return report;
}

bool Instance::operator==(const Instance& other) const {
  auto traveler_eq = [](const Traveler& a, const Traveler& b) {
    return a.group == b.group && a.willingness_scale == b.willingness_scale &&
           a.predispositions == b.predispositions;
  };
  auto provider_eq = [](const Provider& a, const Provider& b) {
    return a.label == b.label && a.capacity == b.capacity && a.op_type == b.op_type &&
           a.cost_scale == b.cost_scale;
  };
  return std::equal(travelers_.begin(), travelers_.end(), other.travelers_.begin(),
                    other.travelers_.end(), traveler_eq) &&
         std::equal(providers_.begin(), providers_.end(), other.providers_.begin(),
                    other.providers_.end(), provider_eq) &&
         bounds_.lower == other.bounds_.lower && bounds_.upper == other.bounds_.upper &&
         override_ == other.override_;
}

Money valuation(const Traveler& traveler, std::size_t provider_index) {
  if (provider_index >= traveler.predispositions.size()) {
    Invalid("provider index " + std::to_string(provider_index) + " out of range");
  }
  return Scale(traveler.predispositions[provider_index], traveler.willingness_scale);
}

Money cost(const Provider& provider) { return Scale(provider.op_type, provider.cost_scale); }

UtilityMatrix build_utility_matrix(const Instance& instance) {
  if (instance.payoff_override()) return *instance.payoff_override();
  const std::size_t I = instance.num_travelers();
  const std::size_t J = instance.num_providers();
  std::vector<Money> costs;
  costs.reserve(J);
  for (const auto& p : instance.providers()) costs.push_back(cost(p));
  std::vector<Money> entries;
  entries.reserve(I * J);
  for (const auto& t : instance.travelers()) {
    for (std::size_t j = 0; j < J; ++j) entries.push_back(valuation(t, j) - costs[j]);
  }
  return UtilityMatrix(I, J, std::move(entries));
}

Money gross_valuation(const Instance& instance, std::size_t i, std::size_t j) {
  if (instance.payoff_override()) return instance.payoff_override()->at(i, j);
  return valuation(instance.traveler(i), j);
}

Money gross_cost(const Instance& instance, std::size_t j) {
  if (instance.payoff_override()) return Money::Zero();
  return cost(instance.provider(j));
}

std::size_t Assignment::num_matched() const {
  return static_cast<std::size_t>(
      std::count_if(matches.begin(), matches.end(), [](const Match& m) { return m.has_value(); }));
}

std::vector<int> Assignment::loads(std::size_t providers) const {
  std::vector<int> out(providers, 0);
  for (const auto& m : matches) {
    if (m && *m < providers) ++out[*m];
  }
  return out;
}

Assignment make_assignment(const UtilityMatrix& matrix, std::span<const int> capacities,
                           std::vector<Match> matches) {
  if (matrix.cols() != capacities.size()) {
    Invalid("capacity vector length " + std::to_string(capacities.size()) +
            " does not match provider count " + std::to_string(matrix.cols()));
  }
  Assignment out;
  out.feasible = matches.size() == matrix.rows();
  std::vector<int> loads(matrix.cols(), 0);
  Money total;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (!matches[i]) continue;
    const std::size_t j = *matches[i];
    if (j >= matrix.cols() || i >= matrix.rows()) {
      out.feasible = false;
      continue;
    }
    ++loads[j];
    total += matrix.at(i, j);
  }
  for (std::size_t j = 0; j < loads.size(); ++j) {
    if (loads[j] > capacities[j]) out.feasible = false;
  }
  out.matches = std::move(matches);
  out.objective = total;
  return out;
}

}  // namespace mobmatch
