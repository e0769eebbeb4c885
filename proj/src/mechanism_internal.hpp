#pragma once

#include <span>

#include "mobmatch/mechanism.hpp"

namespace mobmatch::detail {

// Objective only, without canonicalizing ties.
Money OptimalValue(const UtilityMatrix& matrix, std::span<const int> capacities);

Money WelfareWithout(const UtilityMatrix& matrix, std::span<const int> capacities,
                     AgentRef excluded);

Money TravelerCharge(const Market& market, const Assignment& optimum, Money welfare_without,
                     std::size_t i);
Money ProviderCompensation(const Market& market, const Assignment& optimum,
                           Money welfare_without, std::size_t j);

}  // namespace mobmatch::detail
