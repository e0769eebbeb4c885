#include "dual_labels.hpp"

#include <limits>

namespace mobmatch::detail {

namespace {

struct Edge {
  std::size_t from;
  std::size_t to;
  std::int64_t weight;
};

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Bellman-Ford from `root`; nullopt on a negative cycle.
std::optional<std::vector<std::int64_t>> Distances(std::size_t nodes,
                                                   const std::vector<Edge>& edges,
                                                   std::size_t root) {
  std::vector<std::int64_t> dist(nodes, kInf);
  dist[root] = 0;
  for (std::size_t round = 0; round < nodes; ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      if (dist[e.from] == kInf) continue;
      if (dist[e.from] + e.weight < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.weight;
        changed = true;
      }
    }
    if (!changed) return dist;
  }
  return std::nullopt;
}

}  // namespace

std::optional<DualLabels> ShortestPathDual(const UtilityMatrix& matrix,
                                           std::span<const int> capacities,
                                           std::span<const Match> matches,
                                           DualExtreme extreme) {
  const std::size_t I = matrix.rows();
  const std::size_t J = matrix.cols();
  const std::size_t root = 0;
  auto traveler = [](std::size_t i) { return 1 + i; };
  auto provider = [I](std::size_t j) { return 1 + I + j; };

  std::vector<int> loads(J, 0);
  for (const auto& m : matches) {
    if (m) ++loads[*m];
  }

  std::vector<Edge> edges;
  edges.reserve(I * J + 2 * (I + J) + I);
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      edges.push_back({traveler(i), provider(j), -matrix.at(i, j).micros()});
    }
    edges.push_back({traveler(i), root, 0});
    if (matches[i]) {
      edges.push_back({provider(*matches[i]), traveler(i), matrix.at(i, *matches[i]).micros()});
    } else {
      edges.push_back({root, traveler(i), 0});
    }
  }
  for (std::size_t j = 0; j < J; ++j) {
    edges.push_back({root, provider(j), 0});
    if (loads[j] < capacities[j]) edges.push_back({provider(j), root, 0});
  }

  const std::size_t nodes = 1 + I + J;
  DualLabels out;
  out.phi.resize(I);
  out.psi.resize(J);
  if (extreme == DualExtreme::kTravelerOptimal) {
    auto dist = Distances(nodes, edges, root);
    if (!dist) return std::nullopt;
    for (std::size_t i = 0; i < I; ++i) out.phi[i] = (*dist)[traveler(i)];
    for (std::size_t j = 0; j < J; ++j) out.psi[j] = -(*dist)[provider(j)];
  } else {
    for (Edge& e : edges) std::swap(e.from, e.to);
    auto dist = Distances(nodes, edges, root);
    if (!dist) return std::nullopt;
    for (std::size_t i = 0; i < I; ++i) out.phi[i] = -(*dist)[traveler(i)];
    for (std::size_t j = 0; j < J; ++j) out.psi[j] = (*dist)[provider(j)];
  }
  return out;
}

}  // namespace mobmatch::detail
