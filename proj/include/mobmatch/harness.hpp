#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mobmatch/mechanism.hpp"

namespace mobmatch {

// Seeded family of small random instances. Instance k draws I in
// [1, max_travelers], J in [1, max_providers] and capacities in
// [1, max_capacity] from mix_seed(seed, k).
struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t instances = 200;
  std::size_t max_travelers = 8;
  std::size_t max_providers = 3;
  int max_capacity = 4;
  unsigned threads = 0;  // 0: hardware concurrency
};

Instance suite_instance(const SuiteConfig& config, std::size_t index);

struct ParticipationRow {
  std::size_t instance = 0;
  std::size_t travelers = 0;
  std::size_t providers = 0;
  Money min_traveler_utility;
  Money min_provider_utility;
  Money min_charge;
  Money min_compensation;
  Money budget;
  bool efficient = false;  // mechanism objective == optimum on reported types
  std::size_t violations = 0;
};

// Truthful run of the mechanism on one instance.
ParticipationRow check_participation(const Instance& instance);

struct ParticipationReport {
  std::vector<ParticipationRow> rows;
  std::size_t violations = 0;
  std::size_t efficiency_mismatches = 0;
  Money min_utility;
  Money min_transfer;

  bool ok() const { return violations == 0 && efficiency_mismatches == 0; }
};

ParticipationReport verify_participation(const SuiteConfig& config);

struct TruthfulnessReport {
  AgentRef agent;
  std::size_t grid_points = 0;
  Money truthful_utility;
  Money best_misreport_utility;
  Money max_regret;  // best misreport utility - truthful utility
  std::size_t violations = 0;
  std::vector<Report> violating_reports;  // first few only
};

// Sweeps one agent's report over the uniform grid with step 1/g (travelers:
// every theta in {0, 1/g, ..., 1}; providers: delta in {1/g, ..., 1}) while
// everyone else reports truthfully. g must be >= 2 and divide 10^6.
TruthfulnessReport verify_truthfulness(const Instance& instance, AgentRef agent,
                                       int grid_resolution);

struct TruthfulnessSweep {
  struct Row {
    std::size_t instance = 0;
    TruthfulnessReport report;
  };
  std::vector<Row> rows;
  std::size_t violations = 0;
  Money max_regret;

  bool ok() const { return violations == 0; }
};

// Every agent of every suite instance.
TruthfulnessSweep sweep_truthfulness(const SuiteConfig& config, int grid_resolution);
// Every agent of one instance.
TruthfulnessSweep sweep_truthfulness(const Instance& instance, int grid_resolution,
                                     unsigned threads = 0);

}  // namespace mobmatch
