#include "mobmatch/generator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "mobmatch/error.hpp"

namespace mobmatch {

namespace {

// Unbiased draw in [lo, hi]. The engine's output sequence is fixed by the
// standard; std::uniform_int_distribution is not, so it is avoided here.
std::int64_t Draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, std::string("generator: ") + what);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Instance generate_instance(const GeneratorConfig& c) {
  Require(c.travelers >= 1, "need at least one traveler");
  Require(c.providers >= 1, "need at least one provider");
  Require(c.min_capacity >= 1 && c.min_capacity <= c.max_capacity, "bad capacity range");
  Require(c.min_willingness_units >= 0 && c.min_willingness_units <= c.max_willingness_units,
          "bad willingness range");
  Require(c.min_cost_units >= 0 && c.min_cost_units <= c.max_cost_units, "bad cost range");
  Require(c.theta_steps >= 1 && kMicrosPerUnit % c.theta_steps == 0,
          "theta steps must divide 1000000");
  Require(c.delta_steps >= 1 && kMicrosPerUnit % c.delta_steps == 0,
          "delta steps must divide 1000000");
  Require(c.payment_upper_units >= 0, "negative payment bound");
  Require(!c.balanced || c.providers <= c.travelers,
          "balanced instances need at most one provider per traveler");

  std::mt19937_64 rng(c.seed);
  std::vector<Provider> providers(c.providers);
  for (std::size_t j = 0; j < c.providers; ++j) {
    Provider& p = providers[j];
    p.label = "p" + std::to_string(j);
    p.capacity = static_cast<int>(Draw(rng, c.min_capacity, c.max_capacity));
    p.op_type = Proportion::FromMicros(Draw(rng, 1, c.delta_steps) *
                                       (kMicrosPerUnit / c.delta_steps));
    p.cost_scale = Money::FromUnits(Draw(rng, c.min_cost_units, c.max_cost_units));
  }
  if (c.balanced) {
    // The largest provider (lowest index on ties) absorbs the difference.
    std::int64_t diff = static_cast<std::int64_t>(c.travelers);
    for (const auto& p : providers) diff -= p.capacity;
    std::vector<std::size_t> order(c.providers);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return providers[a].capacity > providers[b].capacity;
    });
    if (diff > 0) providers[order.front()].capacity += static_cast<int>(diff);
    for (std::size_t k = 0; diff < 0 && k < order.size(); ++k) {
      Provider& p = providers[order[k]];
      const std::int64_t cut = std::min<std::int64_t>(-diff, p.capacity - 1);
      p.capacity -= static_cast<int>(cut);
      diff += cut;
    }
  }

  std::vector<Traveler> travelers(c.travelers);
  for (auto& t : travelers) {
    t.group = "random";
    t.willingness_scale =
        Money::FromUnits(Draw(rng, c.min_willingness_units, c.max_willingness_units));
    for (std::size_t j = 0; j < c.providers; ++j) {
      t.predispositions.push_back(Proportion::FromMicros(
          Draw(rng, 0, c.theta_steps) * (kMicrosPerUnit / c.theta_steps)));
    }
  }
  return Instance(std::move(travelers), std::move(providers),
                  {Money::Zero(), Money::FromUnits(c.payment_upper_units)});
}

}  // namespace mobmatch
