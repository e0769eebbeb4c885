#include <optional>
#include <string_view>
#include <vector>

#include "mobmatch/instance_format.hpp"

namespace mobmatch {

namespace {

// Four traveler groups (3, 5, 4, 8 members) over four modes with capacities
// 1, 4, 5, 10. Payoffs are given per group; the printed table only has three
// mode columns, so the train column repeats the bus column.
constexpr std::string_view kFourModes = R"(# Four-mode city example: 20 travelers in 4 groups, 4 providers.
# Payoffs per group; the train column repeats the bus column.
version 1
bounds 0 100
provider bike 1
provider car 4
provider bus 5
provider train 10
traveler students
traveler students
traveler students
traveler commuters
traveler commuters
traveler commuters
traveler commuters
traveler commuters
traveler tourists
traveler tourists
traveler tourists
traveler tourists
traveler consumers
traveler consumers
traveler consumers
traveler consumers
traveler consumers
traveler consumers
traveler consumers
traveler consumers
payoff 0 1 2 0.5 0.5
payoff 1 1 2 0.5 0.5
payoff 2 1 2 0.5 0.5
payoff 3 2.5 2 1.5 1.5
payoff 4 2.5 2 1.5 1.5
payoff 5 2.5 2 1.5 1.5
payoff 6 2.5 2 1.5 1.5
payoff 7 2.5 2 1.5 1.5
payoff 8 2.5 4 1.5 1.5
payoff 9 2.5 4 1.5 1.5
payoff 10 2.5 4 1.5 1.5
payoff 11 2.5 4 1.5 1.5
payoff 12 2.5 5 6.5 6.5
payoff 13 2.5 5 6.5 6.5
payoff 14 2.5 5 6.5 6.5
payoff 15 2.5 5 6.5 6.5
payoff 16 2.5 5 6.5 6.5
payoff 17 2.5 5 6.5 6.5
payoff 18 2.5 5 6.5 6.5
payoff 19 2.5 5 6.5 6.5
)";

}  // namespace

std::optional<std::string_view> builtin_instance_text(std::string_view name) {
  if (name == "paper_siv") return kFourModes;
  return std::nullopt;
}

std::vector<std::string_view> builtin_instance_names() { return {"paper_siv"}; }

}  // namespace mobmatch
