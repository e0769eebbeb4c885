// Independent reference computations for tests. Plain int64 micro-units and
// doubles only; nothing here touches the library's solver code.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "mobmatch/model.hpp"

namespace oracle {

using Grid = std::vector<std::vector<std::int64_t>>;

inline Grid ToGrid(const mobmatch::UtilityMatrix& m) {
  Grid g(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m.at(i, j).micros();
  return g;
}

struct Best {
  std::int64_t value = 0;
  std::vector<int> match;  // -1 = unmatched
};

// Exhaustive search over every vector in {-1, 0, .., J-1}^I, visited in
// lexicographic order; the first strictly better vector wins, so ties go to
// the lexicographically smallest optimum. A traveler listed in `drop` stays
// unmatched; a provider with capacity 0 takes nobody.
inline Best Enumerate(const Grid& a, std::vector<int> caps,
                      const std::vector<int>& drop = {}) {
  const int I = static_cast<int>(a.size());
  const int J = static_cast<int>(caps.size());
  std::vector<int> x(I, -1);
  std::vector<bool> dropped(I, false);
  for (int d : drop) dropped[d] = true;
  Best best;
  best.match = x;
  for (;;) {
    std::vector<int> load(J, 0);
    bool ok = true;
    std::int64_t v = 0;
    for (int i = 0; i < I && ok; ++i) {
      if (x[i] < 0) continue;
      if (dropped[i] || ++load[x[i]] > caps[x[i]]) ok = false;
      else v += a[i][x[i]];
    }
    if (ok && v > best.value) {
      best.value = v;
      best.match = x;
    }
    int k = I - 1;
    while (k >= 0 && x[k] == J - 1) x[k--] = -1;
    if (k < 0) break;
    ++x[k];
  }
  return best;
}

// Travelers come in types with identical rows; enumerate how many of each
// type go to each provider instead of enumerating individuals.
struct Aggregate {
  std::int64_t value = std::numeric_limits<std::int64_t>::min();
  std::vector<std::vector<int>> counts;  // type x provider
};

inline void AggregateRec(const Grid& rows, const std::vector<int>& sizes, std::size_t t,
                         std::size_t j, int left, std::vector<int>& caps,
                         std::vector<std::vector<int>>& counts, std::int64_t value,
                         Aggregate& best) {
  if (t == rows.size()) {
    if (value > best.value) {
      best.value = value;
      best.counts = counts;
    }
    return;
  }
  if (j == caps.size()) {  // the rest of this type stays unmatched
    AggregateRec(rows, sizes, t + 1, 0, t + 1 < rows.size() ? sizes[t + 1] : 0, caps, counts,
                 value, best);
    return;
  }
  const int most = std::min(left, caps[j]);
  for (int n = 0; n <= most; ++n) {
    caps[j] -= n;
    counts[t][j] = n;
    AggregateRec(rows, sizes, t, j + 1, left - n, caps, counts, value + n * rows[t][j], best);
    caps[j] += n;
  }
  counts[t][j] = 0;
}

inline Aggregate EnumerateTypes(const Grid& rows, const std::vector<int>& sizes,
                                std::vector<int> caps) {
  Aggregate best;
  std::vector<std::vector<int>> counts(rows.size(), std::vector<int>(caps.size(), 0));
  if (rows.empty()) return {0, counts};
  AggregateRec(rows, sizes, 0, 0, sizes[0], caps, counts, 0, best);
  return best;
}

// Dual LP: minimize sum(phi) + sum(cap_j * psi_j) subject to
// phi_i + psi_j >= a_ij, phi >= 0, psi >= 0. Solved by visiting every basis
// of I+J tight constraints. Units, not micros. Tiny instances only.
struct DualVertex {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> phi, psi;
};

inline bool SolveDense(std::vector<std::vector<double>> m, std::vector<double> rhs,
                       std::vector<double>& out) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    if (std::fabs(m[p][c]) < 1e-12) return false;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  out.resize(n);
  for (std::size_t c = 0; c < n; ++c) out[c] = rhs[c] / m[c][c];
  return true;
}

inline DualVertex DualByVertices(const Grid& a, const std::vector<int>& caps) {
  const std::size_t I = a.size(), J = caps.size(), n = I + J;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<double> r(n, 0.0);
      r[i] = 1;
      r[I + j] = 1;
      rows.push_back(r);
      rhs.push_back(static_cast<double>(a[i][j]) / 1e6);
    }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> r(n, 0.0);
    r[k] = 1;
    rows.push_back(r);
    rhs.push_back(0);
  }
  DualVertex best;
  std::vector<bool> pick(rows.size(), false);
  std::fill(pick.end() - static_cast<long>(n), pick.end(), true);
  do {
    std::vector<std::vector<double>> m;
    std::vector<double> b;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (pick[r]) {
        m.push_back(rows[r]);
        b.push_back(rhs[r]);
      }
    std::vector<double> y;
    if (!SolveDense(m, b, y)) continue;
    bool feasible = true;
    for (std::size_t r = 0; r < rows.size() && feasible; ++r) {
      double lhs = 0;
      for (std::size_t k = 0; k < n; ++k) lhs += rows[r][k] * y[k];
      if (lhs < rhs[r] - 1e-9) feasible = false;
    }
    if (!feasible) continue;
    double obj = 0;
    for (std::size_t i = 0; i < I; ++i) obj += y[i];
    for (std::size_t j = 0; j < J; ++j) obj += caps[j] * y[I + j];
    if (obj < best.value - 1e-12) {
      best.value = obj;
      best.phi.assign(y.begin(), y.begin() + static_cast<long>(I));
      best.psi.assign(y.begin() + static_cast<long>(I), y.end());
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

// Clarke terms from first principles on gross valuations v and costs c.
struct Clarke {
  std::vector<std::int64_t> charge, compensation;
  Best optimum;
};

inline Clarke ClarkeByEnumeration(const Grid& v, const std::vector<std::int64_t>& c,
                                  const std::vector<int>& caps) {
  Grid a = v;
  for (auto& row : a)
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= c[j];
  Clarke out;
  out.optimum = Enumerate(a, caps);
  const std::int64_t w = out.optimum.value;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int j = out.optimum.match[i];
    const std::int64_t own = j < 0 ? 0 : v[i][j];
    const std::int64_t without = Enumerate(a, caps, {static_cast<int>(i)}).value;
    out.charge.push_back(without - (w - own));
  }
  for (std::size_t j = 0; j < caps.size(); ++j) {
    std::int64_t served = 0;
    for (int m : out.optimum.match) served += m == static_cast<int>(j);
    auto reduced = caps;
    reduced[j] = 0;
    const std::int64_t without = Enumerate(a, reduced).value;
    out.compensation.push_back(w + served * c[j] - without);
  }
  return out;
}

}  // namespace oracle
