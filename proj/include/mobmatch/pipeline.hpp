#pragma once

#include "mobmatch/duality.hpp"
#include "mobmatch/model.hpp"

namespace mobmatch {

// Everything `solve` reports for one instance.
struct SolveOutcome {
  UtilityMatrix matrix;
  Assignment assignment;
  DualSolution dual;
  PaymentMatrix payments;
  BalanceReport balance;
};

SolveOutcome solve_instance(const Instance& instance);

}  // namespace mobmatch
