#include "mobmatch/assign.hpp"

#include <deque>
#include <limits>

#include "dual_labels.hpp"
#include "mobmatch/error.hpp"
#include "mobmatch/flow_network.hpp"

namespace mobmatch {

namespace {

// Residual graph of the current optimal assignment restricted to arcs of
// zero reduced cost, with travelers [0, pivot] removed. A cycle in this graph
// moves between optimal assignments without touching the removed travelers.
class TightResidualGraph {
 public:
  TightResidualGraph(const UtilityMatrix& matrix, std::span<const int> capacities,
                     const std::vector<Match>& matches, const detail::DualLabels& dual,
                     std::size_t pivot)
      : I_(matrix.rows()), J_(matrix.cols()), adjacency_(2 + I_ + J_) {
    std::vector<int> loads(J_, 0);
    std::size_t matched = 0;
    for (const auto& m : matches) {
      if (m) {
        ++loads[*m];
        ++matched;
      }
    }
    for (std::size_t k = pivot + 1; k < I_; ++k) {
      if (matches[k]) {
        Add(Provider(*matches[k]), Traveler(k));
        if (dual.phi[k] == 0) Add(Traveler(k), kSource);
      } else {
        Add(kSource, Traveler(k));
      }
      for (std::size_t j = 0; j < J_; ++j) {
        if (matches[k] == j) continue;
        if (dual.phi[k] + dual.psi[j] == matrix.at(k, j).micros()) Add(Traveler(k), Provider(j));
      }
    }
    for (std::size_t j = 0; j < J_; ++j) {
      if (loads[j] < capacities[j]) Add(Provider(j), kSink);
      if (loads[j] > 0 && dual.psi[j] == 0) Add(kSink, Provider(j));
    }
    Add(kSink, kSource);
    if (matched > 0) Add(kSource, kSink);
  }

  static constexpr std::size_t kSource = 0;
  static constexpr std::size_t kSink = 1;
  std::size_t Traveler(std::size_t i) const { return 2 + i; }
  std::size_t Provider(std::size_t j) const { return 2 + I_ + j; }

  // BFS path from -> to; empty when unreachable.
  std::vector<std::size_t> Path(std::size_t from, std::size_t to) const {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(adjacency_.size(), kNone);
    std::deque<std::size_t> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (u == to) break;
      for (std::size_t v : adjacency_[u]) {
        if (parent[v] != kNone) continue;
        parent[v] = u;
        queue.push_back(v);
      }
    }
    if (parent[to] == kNone) return {};
    std::vector<std::size_t> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    return {path.rbegin(), path.rend()};
  }

  // Applies the traveler moves encoded by a path: each traveler on it takes
  // the state named by its successor node.
  void Apply(const std::vector<std::size_t>& path, std::vector<Match>& matches) const {
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      const std::size_t node = path[k];
      if (node < 2 || node >= 2 + I_) continue;
      const std::size_t next = path[k + 1];
      matches[node - 2] = next == kSource ? Match{} : Match{next - 2 - I_};
    }
  }

 private:
  void Add(std::size_t from, std::size_t to) { adjacency_[from].push_back(to); }

  std::size_t I_;
  std::size_t J_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Walks travelers in index order and moves each one to the smallest choice
// that some optimal assignment agrees with, given the earlier choices.
void CanonicalizeTies(const UtilityMatrix& matrix, std::span<const int> capacities,
                      std::vector<Match>& matches) {
  const auto dual = detail::ShortestPathDual(matrix, capacities, matches,
                                             detail::DualExtreme::kTravelerOptimal);
  if (!dual) throw Error(ErrorKind::kInternal, "flow solution failed its optimality check");
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (!matches[i]) continue;  // unmatched is already the smallest choice
    const std::size_t current = *matches[i];
    const TightResidualGraph graph(matrix, capacities, matches, *dual, i);
    if (dual->phi[i] == 0) {
      auto path = graph.Path(TightResidualGraph::kSource, graph.Provider(current));
      if (!path.empty()) {
        graph.Apply(path, matches);
        matches[i].reset();
        continue;
      }
    }
    for (std::size_t j = 0; j < current; ++j) {
      if (dual->phi[i] + dual->psi[j] != matrix.at(i, j).micros()) continue;
      auto path = graph.Path(graph.Provider(j), graph.Provider(current));
      if (path.empty()) continue;
      graph.Apply(path, matches);
      matches[i] = j;
      break;
    }
  }
}

}  // namespace

Assignment solve_optimal_assignment(const UtilityMatrix& matrix,
                                    std::span<const int> capacities) {
  FlowNetwork network(matrix, capacities);
  const std::int64_t cost = network.MinimizeCost();
  std::vector<Match> matches = network.matches();
  CanonicalizeTies(matrix, capacities, matches);
  Assignment out = make_assignment(matrix, capacities, std::move(matches));
  if (!out.feasible || out.objective.micros() != -cost) {
    throw Error(ErrorKind::kInternal, "flow objective disagrees with recomputed assignment");
  }
  return out;
}

Assignment brute_force_assignment(const UtilityMatrix& matrix,
                                  std::span<const int> capacities) {
  const std::size_t I = matrix.rows();
  const std::size_t J = matrix.cols();
  if (capacities.size() != J) {
    throw Error(ErrorKind::kInvalidArgument, "capacity vector does not match provider count");
  }
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < I; ++i) {
    if (__builtin_mul_overflow(space, J + 1, &space) || space > kBruteForceLimit) {
      throw Error(ErrorKind::kTooLarge,
                  "brute force over " + std::to_string(I) + " travelers and " +
                      std::to_string(J) + " providers exceeds the enumeration limit");
    }
  }

  std::vector<int> remaining(capacities.begin(), capacities.end());
  std::vector<Match> current(I);
  std::vector<Match> best(I);
  Money best_value = Money::Zero();  // the all-unmatched assignment
  // Depth-first in lexicographic order; only strict improvements replace the
  // incumbent, so the first optimum found is the smallest.
  auto visit = [&](auto&& self, std::size_t i, Money value) -> void {
    if (i == I) {
      if (value > best_value) {
        best_value = value;
        best = current;
      }
      return;
    }
    current[i].reset();
    self(self, i + 1, value);
    for (std::size_t j = 0; j < J; ++j) {
      if (remaining[j] == 0) continue;
      --remaining[j];
      current[i] = j;
      self(self, i + 1, value + matrix.at(i, j));
      ++remaining[j];
    }
    current[i].reset();
  };
  visit(visit, 0, Money::Zero());
  return make_assignment(matrix, capacities, std::move(best));
}

Money assignment_value(const UtilityMatrix& matrix, std::span<const int> capacities,
                       const Assignment& assignment) {
  const Assignment checked = make_assignment(matrix, capacities, assignment.matches);
  if (!checked.feasible) {
    throw Error(ErrorKind::kInvalidArgument, "assignment is infeasible for this instance");
  }
  return checked.objective;
}

}  // namespace mobmatch
