#include "mobmatch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "mechanism_internal.hpp"
#include "mobmatch/assign.hpp"
#include "mobmatch/error.hpp"
#include "mobmatch/generator.hpp"

namespace mobmatch {

namespace {

constexpr std::size_t kKeptViolations = 8;

// Runs task(k) for k in [0, count) on a small pool. Results must be written
// to per-index slots so the outcome does not depend on scheduling.
template <typename Task>
void ParallelFor(std::size_t count, unsigned threads, Task&& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          task(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Money MaxMoney() { return Money::FromMicros(std::numeric_limits<std::int64_t>::max()); }

std::int64_t GridStep(int grid_resolution) {
  if (grid_resolution < 2 || kMicrosPerUnit % grid_resolution != 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "grid resolution must be >= 2 and divide 1000000, got " +
                    std::to_string(grid_resolution));
  }
  return kMicrosPerUnit / grid_resolution;
}

}  // namespace

Instance suite_instance(const SuiteConfig& config, std::size_t index) {
  const std::uint64_t seed = mix_seed(config.seed, index);
  std::uint64_t shape = mix_seed(seed, 0);
  GeneratorConfig g;
  g.seed = seed;
  g.travelers = 1 + shape % config.max_travelers;
  shape /= config.max_travelers;
  g.providers = 1 + shape % config.max_providers;
  g.min_capacity = 1;
  g.max_capacity = std::max(1, config.max_capacity);
  return generate_instance(g);
}

ParticipationRow check_participation(const Instance& instance) {
  const auto reports = truthful_reports(instance);
  const MechanismOutcome outcome = run_mechanism(instance, reports);
  ParticipationRow row;
  row.travelers = instance.num_travelers();
  row.providers = instance.num_providers();
  row.min_traveler_utility = *std::min_element(outcome.traveler_utilities.begin(),
                                               outcome.traveler_utilities.end());
  row.min_provider_utility = *std::min_element(outcome.provider_utilities.begin(),
                                               outcome.provider_utilities.end());
  row.min_charge =
      *std::min_element(outcome.traveler_charges.begin(), outcome.traveler_charges.end());
  row.min_compensation = *std::min_element(outcome.provider_compensations.begin(),
                                           outcome.provider_compensations.end());
  row.budget = outcome.budget;
  for (const auto* values : {&outcome.traveler_utilities, &outcome.provider_utilities,
                             &outcome.traveler_charges, &outcome.provider_compensations}) {
    row.violations += static_cast<std::size_t>(std::count_if(
        values->begin(), values->end(), [](Money m) { return m.is_negative(); }));
  }
  // Efficiency is checked against an independent route: exhaustive search
  // when small enough, otherwise the uncanonicalized flow optimum.
  const Market reported = reported_market(instance, reports);
  const UtilityMatrix payoffs = reported.payoffs();
  Money optimum;
  try {
    optimum = brute_force_assignment(payoffs, reported.capacities).objective;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kTooLarge) throw;
    optimum = detail::OptimalValue(payoffs, reported.capacities);
  }
  row.efficient = outcome.assignment.objective == optimum;
  return row;
}

ParticipationReport verify_participation(const SuiteConfig& config) {
  ParticipationReport report;
  report.rows.resize(config.instances);
  ParallelFor(config.instances, config.threads, [&](std::size_t k) {
    report.rows[k] = check_participation(suite_instance(config, k));
    report.rows[k].instance = k;
  });
  report.min_utility = MaxMoney();
  report.min_transfer = MaxMoney();
  for (const auto& row : report.rows) {
    report.violations += row.violations;
    if (!row.efficient) ++report.efficiency_mismatches;
    report.min_utility = Min(report.min_utility,
                             Min(row.min_traveler_utility, row.min_provider_utility));
    report.min_transfer = Min(report.min_transfer, Min(row.min_charge, row.min_compensation));
  }
  return report;
}

TruthfulnessReport verify_truthfulness(const Instance& instance, AgentRef agent,
                                       int grid_resolution) {
  const std::int64_t step = GridStep(grid_resolution);
  if (instance.has_override()) {
    throw Error(ErrorKind::kInvalidArgument,
                "truthfulness sweeps need instances with derived payoffs");
  }
  const bool is_traveler = agent.kind == AgentKind::kTraveler;
  if (agent.id >= (is_traveler ? instance.num_travelers() : instance.num_providers())) {
    throw Error(ErrorKind::kInvalidArgument, "agent out of range");
  }
  const Market actual = true_market(instance);
  // Removing the agent also removes its report, so this term is fixed.
  const Money without = detail::WelfareWithout(actual.payoffs(), actual.capacities, agent);

  std::vector<Report> reports = truthful_reports(instance);
  const std::size_t slot = is_traveler ? agent.id : instance.num_travelers() + agent.id;

  auto utility_of = [&](const std::vector<Proportion>& type) {
    reports[slot].type = type;
    const Market reported = reported_market(instance, reports);
    const Assignment x = solve_optimal_assignment(reported.payoffs(), reported.capacities);
    if (is_traveler) {
      const Money charge = detail::TravelerCharge(reported, x, without, agent.id);
      const Match& m = x.matches[agent.id];
      return (m ? actual.valuations.at(agent.id, *m) : Money::Zero()) - charge;
    }
    const Money compensation = detail::ProviderCompensation(reported, x, without, agent.id);
    return compensation - actual.costs[agent.id] * x.loads(actual.costs.size())[agent.id];
  };

  TruthfulnessReport report;
  report.agent = agent;
  const std::vector<Proportion> truth = reports[slot].type;
  report.truthful_utility = utility_of(truth);
  report.best_misreport_utility = Money::FromMicros(std::numeric_limits<std::int64_t>::min());

  auto consider = [&](const std::vector<Proportion>& type) {
    const Money u = utility_of(type);
    ++report.grid_points;
    report.best_misreport_utility = Max(report.best_misreport_utility, u);
    if (u > report.truthful_utility) {
      ++report.violations;
      if (report.violating_reports.size() < kKeptViolations) {
        report.violating_reports.push_back({agent, type});
      }
    }
  };

  if (is_traveler) {
    // Odometer over (g + 1)^J grid points.
    const std::size_t J = instance.num_providers();
    std::vector<int> digits(J, 0);
    std::vector<Proportion> type(J, Proportion::Zero());
    while (true) {
      consider(type);
      std::size_t pos = 0;
      while (pos < J && digits[pos] == grid_resolution) {
        digits[pos] = 0;
        type[pos] = Proportion::Zero();
        ++pos;
      }
      if (pos == J) break;
      ++digits[pos];
      type[pos] = Proportion::FromMicros(digits[pos] * step);
    }
  } else {
    for (int k = 1; k <= grid_resolution; ++k) {
      consider({Proportion::FromMicros(k * step)});
    }
  }
  report.max_regret = report.best_misreport_utility - report.truthful_utility;
  return report;
}

namespace {

TruthfulnessSweep Collect(std::vector<TruthfulnessSweep::Row> rows) {
  TruthfulnessSweep sweep;
  sweep.max_regret = Money::FromMicros(std::numeric_limits<std::int64_t>::min());
  for (const auto& row : rows) {
    sweep.violations += row.report.violations;
    sweep.max_regret = Max(sweep.max_regret, row.report.max_regret);
  }
  sweep.rows = std::move(rows);
  return sweep;
}

std::vector<AgentRef> AllAgents(const Instance& instance) {
  std::vector<AgentRef> agents;
  for (std::size_t i = 0; i < instance.num_travelers(); ++i) {
    agents.push_back({AgentKind::kTraveler, i});
  }
  for (std::size_t j = 0; j < instance.num_providers(); ++j) {
    agents.push_back({AgentKind::kProvider, j});
  }
  return agents;
}

}  // namespace

TruthfulnessSweep sweep_truthfulness(const SuiteConfig& config, int grid_resolution) {
  GridStep(grid_resolution);
  std::vector<Instance> instances;
  std::vector<std::pair<std::size_t, AgentRef>> jobs;
  for (std::size_t k = 0; k < config.instances; ++k) {
    instances.push_back(suite_instance(config, k));
    for (const AgentRef& a : AllAgents(instances.back())) jobs.emplace_back(k, a);
  }
  std::vector<TruthfulnessSweep::Row> rows(jobs.size());
  ParallelFor(jobs.size(), config.threads, [&](std::size_t n) {
    const auto& [k, agent] = jobs[n];
    rows[n] = {k, verify_truthfulness(instances[k], agent, grid_resolution)};
  });
  return Collect(std::move(rows));
}

TruthfulnessSweep sweep_truthfulness(const Instance& instance, int grid_resolution,
                                     unsigned threads) {
  const std::vector<AgentRef> agents = AllAgents(instance);
  std::vector<TruthfulnessSweep::Row> rows(agents.size());
  ParallelFor(agents.size(), threads, [&](std::size_t n) {
    rows[n] = {0, verify_truthfulness(instance, agents[n], grid_resolution)};
  });
  return Collect(std::move(rows));
}

}  // namespace mobmatch
