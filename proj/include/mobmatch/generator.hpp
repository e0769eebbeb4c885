#pragma once

#include <cstddef>
#include <cstdint>

#include "mobmatch/model.hpp"

namespace mobmatch {

// Random instance recipe. Willingness and cost scales are drawn in whole
// units so that every theta * V and delta * C is exact in micro-units.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  std::size_t travelers = 6;
  std::size_t providers = 2;
  int min_capacity = 1;
  int max_capacity = 4;
  bool balanced = false;  // force sum of capacities == travelers
  std::int64_t min_willingness_units = 0;
  std::int64_t max_willingness_units = 10;
  std::int64_t min_cost_units = 0;
  std::int64_t max_cost_units = 5;
  int theta_steps = 100;  // theta drawn from {0, 1/steps, ..., 1}
  int delta_steps = 100;  // delta drawn from {1/steps, ..., 1}
  std::int64_t payment_upper_units = 100;
};

// Same config, same instance. Throws Error{kInvalidArgument} on an
// infeasible config (no agents, empty ranges, balance with J > I, ...).
Instance generate_instance(const GeneratorConfig& config);

// Stateless 64-bit mixer, used to derive per-instance seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace mobmatch
