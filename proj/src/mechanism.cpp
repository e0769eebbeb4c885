#include "mobmatch/mechanism.hpp"

#include "mechanism_internal.hpp"
#include "mobmatch/assign.hpp"
#include "mobmatch/error.hpp"
#include "mobmatch/flow_network.hpp"

namespace mobmatch {

namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorKind::kInvalidArgument, what);
}

std::string AgentName(const AgentRef& a) {
  return (a.kind == AgentKind::kTraveler ? "traveler " : "provider ") + std::to_string(a.id);
}

}  // namespace

UtilityMatrix Market::payoffs() const {
  std::vector<Money> entries;
  entries.reserve(valuations.rows() * valuations.cols());
  for (std::size_t i = 0; i < valuations.rows(); ++i) {
    for (std::size_t j = 0; j < valuations.cols(); ++j) {
      entries.push_back(valuations.at(i, j) - costs[j]);
    }
  }
  return UtilityMatrix(valuations.rows(), valuations.cols(), std::move(entries));
}

std::vector<Report> truthful_reports(const Instance& instance) {
  std::vector<Report> out;
  for (std::size_t i = 0; i < instance.num_travelers(); ++i) {
    out.push_back({{AgentKind::kTraveler, i}, instance.traveler(i).predispositions});
  }
  for (std::size_t j = 0; j < instance.num_providers(); ++j) {
    out.push_back({{AgentKind::kProvider, j}, {instance.provider(j).op_type}});
  }
  return out;
}

Market true_market(const Instance& instance) {
  const std::size_t I = instance.num_travelers();
  const std::size_t J = instance.num_providers();
  std::vector<Money> values;
  values.reserve(I * J);
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t j = 0; j < J; ++j) values.push_back(gross_valuation(instance, i, j));
  }
  std::vector<Money> costs;
  for (std::size_t j = 0; j < J; ++j) costs.push_back(gross_cost(instance, j));
  return {UtilityMatrix(I, J, std::move(values)), std::move(costs), instance.capacities()};
}

Market reported_market(const Instance& instance, std::span<const Report> reports) {
  const std::size_t I = instance.num_travelers();
  const std::size_t J = instance.num_providers();
  std::vector<const Report*> traveler_reports(I, nullptr);
  std::vector<const Report*> provider_reports(J, nullptr);
  for (const Report& r : reports) {
    const bool traveler = r.agent.kind == AgentKind::kTraveler;
    auto& slot = traveler ? traveler_reports : provider_reports;
    if (r.agent.id >= slot.size()) Invalid("report for unknown " + AgentName(r.agent));
    if (slot[r.agent.id]) Invalid("duplicate report for " + AgentName(r.agent));
    if (traveler && r.type.size() != J) {
      Invalid("report for " + AgentName(r.agent) + " needs " + std::to_string(J) + " values");
    }
    if (!traveler && (r.type.size() != 1 || r.type[0].is_zero())) {
      Invalid("report for " + AgentName(r.agent) + " needs one type in (0, 1]");
    }
    slot[r.agent.id] = &r;
  }
  for (std::size_t i = 0; i < I; ++i) {
    if (!traveler_reports[i]) Invalid("missing report for traveler " + std::to_string(i));
  }
  for (std::size_t j = 0; j < J; ++j) {
    if (!provider_reports[j]) Invalid("missing report for provider " + std::to_string(j));
  }

  if (instance.has_override()) {
    for (std::size_t i = 0; i < I; ++i) {
      if (traveler_reports[i]->type != instance.traveler(i).predispositions) {
        Invalid("instance payoffs are fixed; traveler " + std::to_string(i) +
                " cannot report a different type");
      }
    }
    for (std::size_t j = 0; j < J; ++j) {
      if (provider_reports[j]->type[0] != instance.provider(j).op_type) {
        Invalid("instance payoffs are fixed; provider " + std::to_string(j) +
                " cannot report a different type");
      }
    }
    return true_market(instance);
  }

  std::vector<Money> values;
  values.reserve(I * J);
  for (std::size_t i = 0; i < I; ++i) {
    const Money scale = instance.traveler(i).willingness_scale;
    for (std::size_t j = 0; j < J; ++j) {
      values.push_back(Scale(traveler_reports[i]->type[j], scale));
    }
  }
  std::vector<Money> costs;
  for (std::size_t j = 0; j < J; ++j) {
    costs.push_back(Scale(provider_reports[j]->type[0], instance.provider(j).cost_scale));
  }
  return {UtilityMatrix(I, J, std::move(values)), std::move(costs), instance.capacities()};
}

namespace detail {

Money OptimalValue(const UtilityMatrix& matrix, std::span<const int> capacities) {
  if (matrix.rows() == 0 || matrix.cols() == 0) return Money::Zero();
  FlowNetwork network(matrix, capacities);
  return Money::FromMicros(-network.MinimizeCost());
}

Money WelfareWithout(const UtilityMatrix& matrix, std::span<const int> capacities,
                     AgentRef excluded) {
  std::set<std::size_t> travelers;
  std::set<std::size_t> providers;
  (excluded.kind == AgentKind::kTraveler ? travelers : providers).insert(excluded.id);
  return gross_welfare(matrix, capacities, travelers, providers);
}

Money TravelerCharge(const Market& market, const Assignment& optimum, Money welfare_without,
                     std::size_t i) {
  const Match& m = optimum.matches[i];
  const Money own = m ? market.valuations.at(i, *m) : Money::Zero();
  const Money charge = welfare_without - (optimum.objective - own);
  if (charge.is_negative()) {
    throw Error(ErrorKind::kInternal, "negative Clarke charge for traveler " + std::to_string(i));
  }
  return charge;
}

Money ProviderCompensation(const Market& market, const Assignment& optimum,
                           Money welfare_without, std::size_t j) {
  const int served = optimum.loads(market.costs.size())[j];
  const Money own = -(market.costs[j] * served);
  const Money compensation = (optimum.objective - own) - welfare_without;
  if (compensation.is_negative()) {
    throw Error(ErrorKind::kInternal,
                "negative Clarke compensation for provider " + std::to_string(j));
  }
  return compensation;
}

}  // namespace detail

Money gross_welfare(const UtilityMatrix& matrix, std::span<const int> capacities,
                    const std::set<std::size_t>& excluded_travelers,
                    const std::set<std::size_t>& excluded_providers) {
  if (capacities.size() != matrix.cols()) {
    Invalid("capacity vector does not match provider count");
  }
  for (auto i : excluded_travelers) {
    if (i >= matrix.rows()) Invalid("excluded traveler " + std::to_string(i) + " out of range");
  }
  for (auto j : excluded_providers) {
    if (j >= matrix.cols()) Invalid("excluded provider " + std::to_string(j) + " out of range");
  }
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (!excluded_travelers.contains(i)) rows.push_back(i);
  }
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    if (!excluded_providers.contains(j)) cols.push_back(j);
  }
  std::vector<Money> entries;
  entries.reserve(rows.size() * cols.size());
  for (auto i : rows) {
    for (auto j : cols) entries.push_back(matrix.at(i, j));
  }
  std::vector<int> caps;
  for (auto j : cols) caps.push_back(capacities[j]);
  return detail::OptimalValue(UtilityMatrix(rows.size(), cols.size(), std::move(entries)), caps);
}

Money clarke_charge_traveler(const Instance& instance, std::size_t i) {
  if (i >= instance.num_travelers()) Invalid("traveler " + std::to_string(i) + " out of range");
  const Market market = true_market(instance);
  const UtilityMatrix payoffs = market.payoffs();
  const Assignment optimum = solve_optimal_assignment(payoffs, market.capacities);
  return detail::TravelerCharge(
      market, optimum,
      detail::WelfareWithout(payoffs, market.capacities, {AgentKind::kTraveler, i}), i);
}

Money clarke_compensation_provider(const Instance& instance, std::size_t j) {
  if (j >= instance.num_providers()) Invalid("provider " + std::to_string(j) + " out of range");
  const Market market = true_market(instance);
  const UtilityMatrix payoffs = market.payoffs();
  const Assignment optimum = solve_optimal_assignment(payoffs, market.capacities);
  return detail::ProviderCompensation(
      market, optimum,
      detail::WelfareWithout(payoffs, market.capacities, {AgentKind::kProvider, j}), j);
}

MechanismOutcome run_mechanism(const Instance& truth, std::span<const Report> reports) {
  const Market reported = reported_market(truth, reports);
  const Market actual = true_market(truth);
  const UtilityMatrix payoffs = reported.payoffs();
  const std::size_t I = truth.num_travelers();
  const std::size_t J = truth.num_providers();

  MechanismOutcome out;
  out.assignment = solve_optimal_assignment(payoffs, reported.capacities);
  const std::vector<int> loads = out.assignment.loads(J);
  for (std::size_t i = 0; i < I; ++i) {
    const Money without =
        detail::WelfareWithout(payoffs, reported.capacities, {AgentKind::kTraveler, i});
    const Money charge = detail::TravelerCharge(reported, out.assignment, without, i);
    const Match& m = out.assignment.matches[i];
    const Money value = m ? actual.valuations.at(i, *m) : Money::Zero();
    out.traveler_charges.push_back(charge);
    out.traveler_utilities.push_back(value - charge);
    out.budget += charge;
  }
  for (std::size_t j = 0; j < J; ++j) {
    const Money without =
        detail::WelfareWithout(payoffs, reported.capacities, {AgentKind::kProvider, j});
    const Money compensation =
        detail::ProviderCompensation(reported, out.assignment, without, j);
    out.provider_compensations.push_back(compensation);
    out.provider_utilities.push_back(compensation - actual.costs[j] * loads[j]);
    out.budget -= compensation;
  }
  return out;
}

}  // namespace mobmatch
