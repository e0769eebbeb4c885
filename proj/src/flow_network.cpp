#include "mobmatch/flow_network.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "mobmatch/error.hpp"

namespace mobmatch {

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max() / 4;

}  // namespace

FlowNetwork::FlowNetwork(const UtilityMatrix& matrix, std::span<const int> capacities)
    : travelers_(matrix.rows()), providers_(matrix.cols()) {
  if (capacities.size() != providers_) {
    throw Error(ErrorKind::kInvalidArgument, "capacity vector does not match provider count");
  }
  const std::size_t nodes = travelers_ + providers_ + 2;
  // Any simple path or cycle has at most `nodes` arcs.
  if (matrix.max_abs_micros() > kUnreachable / static_cast<std::int64_t>(4 * nodes)) {
    throw Error(ErrorKind::kOverflow, "payoffs too large for exact path arithmetic");
  }
  adjacency_.resize(nodes);
  potential_.assign(nodes, 0);
  for (std::size_t i = 0; i < travelers_; ++i) AddArc(source(), traveler_node(i), 1, 0);
  for (std::size_t i = 0; i < travelers_; ++i) {
    for (std::size_t j = 0; j < providers_; ++j) {
      const Money a = matrix.at(i, j);
      if (a.is_positive()) AddArc(traveler_node(i), provider_node(j), 1, -a.micros());
    }
  }
  for (std::size_t j = 0; j < providers_; ++j) {
    if (capacities[j] < 1) {
      throw Error(ErrorKind::kInvalidArgument, "provider capacity must be >= 1");
    }
    AddArc(provider_node(j), sink(), capacities[j], 0);
  }
}

std::size_t FlowNetwork::AddArc(std::size_t from, std::size_t to, std::int64_t capacity,
                                std::int64_t cost) {
  const std::size_t id = arcs_.size();
  arcs_.push_back({from, to, capacity, 0, cost});
  arcs_.push_back({to, from, 0, 0, -cost});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id;
}

std::vector<FlowNetwork::Arc> FlowNetwork::forward_arcs() const {
  std::vector<Arc> out;
  out.reserve(arcs_.size() / 2);
  for (std::size_t k = 0; k < arcs_.size(); k += 2) out.push_back(arcs_[k]);
  return out;
}

void FlowNetwork::SeedPotentials() {
  std::vector<std::int64_t> dist(num_nodes(), kUnreachable);
  dist[source()] = 0;
  for (std::size_t round = 0; round + 1 < num_nodes(); ++round) {
    bool changed = false;
    for (const Arc& arc : arcs_) {
      if (arc.flow >= arc.capacity || dist[arc.from] == kUnreachable) continue;
      if (dist[arc.from] + arc.cost < dist[arc.to]) {
        dist[arc.to] = dist[arc.from] + arc.cost;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (std::size_t v = 0; v < num_nodes(); ++v) {
    potential_[v] = dist[v] == kUnreachable ? 0 : dist[v];
  }
}

bool FlowNetwork::ShortestPath(std::vector<std::int64_t>& dist,
                               std::vector<std::size_t>& via) const {
  using Entry = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist.assign(num_nodes(), kUnreachable);
  via.assign(num_nodes(), arcs_.size());
  dist[source()] = 0;
  heap.emplace(0, source());
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (std::size_t id : adjacency_[u]) {
      const Arc& arc = arcs_[id];
      if (arc.flow >= arc.capacity) continue;
      const std::int64_t reduced = arc.cost + potential_[u] - potential_[arc.to];
      if (d + reduced < dist[arc.to]) {
        dist[arc.to] = d + reduced;
        via[arc.to] = id;
        heap.emplace(dist[arc.to], arc.to);
      }
    }
  }
  return dist[sink()] != kUnreachable;
}

std::int64_t FlowNetwork::MinimizeCost() {
  SeedPotentials();
  std::int64_t total = 0;
  std::vector<std::int64_t> dist;
  std::vector<std::size_t> via;
  while (ShortestPath(dist, via)) {
    const std::int64_t path_cost = dist[sink()] - potential_[source()] + potential_[sink()];
    // Path costs are nondecreasing, so nothing later can improve either.
    if (path_cost >= 0) break;
    for (std::size_t v = 0; v < num_nodes(); ++v) {
      if (dist[v] != kUnreachable) potential_[v] += dist[v];
    }
    std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = sink(); v != source(); v = arcs_[via[v]].from) {
      const Arc& arc = arcs_[via[v]];
      bottleneck = std::min(bottleneck, arc.capacity - arc.flow);
    }
    for (std::size_t v = sink(); v != source(); v = arcs_[via[v]].from) {
      arcs_[via[v]].flow += bottleneck;
      arcs_[via[v] ^ 1].flow -= bottleneck;
    }
    total += bottleneck * path_cost;
  }
  return total;
}

std::vector<Match> FlowNetwork::matches() const {
  std::vector<Match> out(travelers_);
  for (std::size_t k = 0; k < arcs_.size(); k += 2) {
    const Arc& arc = arcs_[k];
    if (arc.flow <= 0 || arc.from == source() || arc.to == sink()) continue;
    out[arc.from - 1] = arc.to - 1 - travelers_;
  }
  return out;
}

}  // namespace mobmatch
