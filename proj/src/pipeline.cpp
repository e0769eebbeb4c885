#include "mobmatch/pipeline.hpp"

#include "mobmatch/assign.hpp"

namespace mobmatch {

SolveOutcome solve_instance(const Instance& instance) {
  SolveOutcome out;
  out.matrix = build_utility_matrix(instance);
  const std::vector<int> caps = instance.capacities();
  out.assignment = solve_optimal_assignment(out.matrix, caps);
  out.dual = solve_dual(out.matrix, caps, out.assignment);
  out.payments = extract_payments(instance, out.assignment, out.dual);
  out.balance = instance.balance();
  return out;
}

}  // namespace mobmatch
