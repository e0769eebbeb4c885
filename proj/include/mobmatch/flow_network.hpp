#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mobmatch/model.hpp"

namespace mobmatch {

// Source -> traveler (cap 1) -> provider (cap 1, cost -a_ij) -> sink
// (cap eps_j). Pairs with a_ij <= 0 are left out: leaving a traveler
// unmatched is always worth 0, so those arcs never improve the optimum.
class FlowNetwork {
 public:
  struct Arc {
    std::size_t from = 0;
    std::size_t to = 0;
    std::int64_t capacity = 0;
    std::int64_t flow = 0;
    std::int64_t cost = 0;  // micro-units
  };

  FlowNetwork(const UtilityMatrix& matrix, std::span<const int> capacities);

  std::size_t num_nodes() const { return adjacency_.size(); }
  std::size_t source() const { return 0; }
  std::size_t sink() const { return num_nodes() - 1; }
  std::size_t traveler_node(std::size_t i) const { return 1 + i; }
  std::size_t provider_node(std::size_t j) const { return 1 + travelers_ + j; }

  // Forward arcs only (residual twins are internal).
  std::vector<Arc> forward_arcs() const;

  // Successive shortest augmenting paths with node potentials: one
  // Bellman-Ford pass seeds the potentials, then Dijkstra on reduced costs.
  // Augmentation stops once the cheapest residual s-t path has
  // nonnegative cost. Returns the total (negated) profit in micro-units.
  std::int64_t MinimizeCost();

  std::vector<Match> matches() const;

 private:
  std::size_t AddArc(std::size_t from, std::size_t to, std::int64_t capacity,
                     std::int64_t cost);
  void SeedPotentials();
  bool ShortestPath(std::vector<std::int64_t>& dist, std::vector<std::size_t>& via) const;

  std::size_t travelers_ = 0;
  std::size_t providers_ = 0;
  std::vector<Arc> arcs_;  // arc k and k ^ 1 are residual twins
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::int64_t> potential_;
};

}  // namespace mobmatch
