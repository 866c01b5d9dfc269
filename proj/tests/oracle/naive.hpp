// Copyright 2026 The GenPerm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force reference implementations used as test oracles. Everything
// here works on adjacency matrices and plain node lists and recomputes each
// quantity from its definition, sharing no code with the library.

#ifndef GENPERM_TESTS_ORACLE_NAIVE_HPP_
#define GENPERM_TESTS_ORACLE_NAIVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Communities = std::vector<std::vector<int>>;

struct NaiveGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // n x n, 0/1

  NaiveGraph(int nodes, const std::vector<std::pair<int, int>>& edges)
      : n(nodes), adj(nodes, std::vector<int>(nodes, 0)) {
    for (const auto& [u, v] : edges) {
      if (u != v) adj[u][v] = adj[v][u] = 1;
    }
  }
  int degree(int v) const {
    int d = 0;
    for (int u = 0; u < n; ++u) d += adj[v][u];
    return d;
  }
  int edge_count() const {
    int m = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) m += adj[u][v];
    return m;
  }
};

inline bool in(const std::vector<int>& c, int v) {
  return std::find(c.begin(), c.end(), v) != c.end();
}

inline int memberships(const Communities& cs, int v) {
  int o = 0;
  for (const auto& c : cs) o += in(c, v) ? 1 : 0;
  return o;
}

inline int shared(const Communities& cs, int u, int v) {
  int x = 0;
  for (const auto& c : cs) x += (in(c, u) && in(c, v)) ? 1 : 0;
  return x;
}

/// P_g^c(v) with c given by index into cs.
inline double genperm_vc(const NaiveGraph& g, const Communities& cs, int v, int ci) {
  const auto& c = cs[ci];
  const double degree = g.degree(v);
  int internal = 0;
  double effective = 0.0;
  std::vector<int> neighbors_in_c;
  for (int u = 0; u < g.n; ++u) {
    if (!g.adj[v][u]) continue;
    const int x = shared(cs, u, v);
    if (x > 0) ++internal;
    if (in(c, u)) {
      effective += 1.0 / x;
      neighbors_in_c.push_back(u);
    }
  }
  // Largest number of external neighbors (sharing nothing with v) that sit
  // in one community.
  int emax = 0;
  for (const auto& other : cs) {
    int count = 0;
    for (int u = 0; u < g.n; ++u) {
      if (g.adj[v][u] && shared(cs, u, v) == 0 && in(other, u)) ++count;
    }
    emax = std::max(emax, count);
  }
  if (emax == 0) emax = 1;
  double cin;
  if (internal < 2) {
    cin = 1.0;
  } else if (neighbors_in_c.size() < 2) {
    cin = 0.0;
  } else {
    int links = 0;
    for (std::size_t a = 0; a < neighbors_in_c.size(); ++a)
      for (std::size_t b = a + 1; b < neighbors_in_c.size(); ++b)
        links += g.adj[neighbors_in_c[a]][neighbors_in_c[b]];
    const double k = static_cast<double>(neighbors_in_c.size());
    cin = links / (k * (k - 1) / 2);
  }
  const double pull = effective / (emax * degree);
  if (internal == 0) return pull;
  return pull - (1.0 - cin) * effective / internal;
}

inline double genperm_vertex(const NaiveGraph& g, const Communities& cs, int v) {
  double total = 0.0;
  for (int ci = 0; ci < static_cast<int>(cs.size()); ++ci) {
    if (in(cs[ci], v)) total += genperm_vc(g, cs, v, ci);
  }
  return total;
}

inline double genperm_network(const NaiveGraph& g, const Communities& cs) {
  double total = 0.0;
  for (int v = 0; v < g.n; ++v) total += genperm_vertex(g, cs, v);
  return total / g.n;
}

/// Classic permanence under a partition given as a label per node.
inline double permanence(const NaiveGraph& g, const std::vector<int>& label, int v) {
  std::vector<int> inside;
  std::vector<int> outside_per_label(g.n, 0);
  for (int u = 0; u < g.n; ++u) {
    if (!g.adj[v][u]) continue;
    if (label[u] == label[v]) {
      inside.push_back(u);
    } else {
      ++outside_per_label[label[u]];
    }
  }
  int emax = *std::max_element(outside_per_label.begin(), outside_per_label.end());
  if (emax == 0) emax = 1;
  double cin = 1.0;
  if (inside.size() >= 2) {
    int links = 0;
    for (std::size_t a = 0; a < inside.size(); ++a)
      for (std::size_t b = a + 1; b < inside.size(); ++b) links += g.adj[inside[a]][inside[b]];
    const double k = static_cast<double>(inside.size());
    cin = links / (k * (k - 1) / 2);
  }
  return static_cast<double>(inside.size()) / (emax * g.degree(v)) - (1.0 - cin);
}

inline double eq(const NaiveGraph& g, const Communities& cs) {
  const double two_m = 2.0 * g.edge_count();
  double total = 0.0;
  for (const auto& c : cs) {
    for (const int i : c) {
      for (const int j : c) {
        const double weight = 1.0 / (memberships(cs, i) * memberships(cs, j));
        total += weight * (g.adj[i][j] - g.degree(i) * static_cast<double>(g.degree(j)) / two_m);
      }
    }
  }
  return total / two_m;
}

inline double qov(const NaiveGraph& g, const Communities& cs) {
  double total = 0.0;
  for (const auto& c : cs) {
    const double nc = static_cast<double>(c.size());
    if (c.size() < 2) continue;
    double node_sum = 0.0;
    int edges = 0;
    for (const int i : c) {
      double in_links = 0.0, out_links = 0.0;
      for (int j = 0; j < g.n; ++j) {
        if (!g.adj[i][j]) continue;
        if (in(c, j)) {
          in_links += 1;
          if (j > i) ++edges;
        } else {
          out_links += 1;
        }
      }
      node_sum += (in_links - out_links) / (g.degree(i) * memberships(cs, i));
    }
    total += node_sum / nc * (edges / (nc * (nc - 1) / 2));
  }
  return total / static_cast<double>(cs.size());
}

inline double cc(int n, const Communities& cs) {
  int covered = 0;
  for (int v = 0; v < n; ++v) {
    bool hit = false;
    for (const auto& c : cs) hit = hit || (c.size() >= 3 && in(c, v));
    covered += hit ? 1 : 0;
  }
  return static_cast<double>(covered) / n;
}

inline double oc(int n, const Communities& cs) {
  int total = 0;
  for (int v = 0; v < n; ++v)
    for (const auto& c : cs) total += (c.size() >= 3 && in(c, v)) ? 1 : 0;
  return static_cast<double>(total) / n;
}

/// Ordered pairs, self-pairs included.
inline double omega(int n, const Communities& truth, const Communities& detected) {
  int agree = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) agree += shared(truth, u, v) == shared(detected, u, v) ? 1 : 0;
  return static_cast<double>(agree) / (static_cast<double>(n) * n);
}

inline double f1(const std::vector<int>& a, const std::vector<int>& b) {
  int common = 0;
  for (const int v : a) common += in(b, v) ? 1 : 0;
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / b.size();
  const double recall = static_cast<double>(common) / a.size();
  return 2 * precision * recall / (precision + recall);
}

inline double fscore(const Communities& truth, const Communities& detected) {
  double left = 0.0, right = 0.0;
  for (const auto& t : truth) {
    double best = 0.0;
    for (const auto& d : detected) best = std::max(best, f1(t, d));
    left += best;
  }
  for (const auto& d : detected) {
    double best = 0.0;
    for (const auto& t : truth) best = std::max(best, f1(t, d));
    right += best;
  }
  return 0.5 * (left / truth.size() + right / detected.size());
}

inline double h(double p) { return p > 0 ? -p * std::log(p) : 0.0; }

/// Overlapping NMI, max-normalized lack-of-information form, from a 2x2
/// contingency table built by enumerating every node.
inline double onmi(int n, const Communities& x, const Communities& y) {
  auto entropy_of = [&](const std::vector<int>& c) {
    const double p = static_cast<double>(c.size()) / n;
    return h(p) + h(1 - p);
  };
  auto conditional = [&](const Communities& a, const Communities& b) {
    double sum = 0.0;
    for (const auto& xk : a) {
      const double hxk = entropy_of(xk);
      double best = hxk;
      for (const auto& yl : b) {
        double n00 = 0, n01 = 0, n10 = 0, n11 = 0;
        for (int v = 0; v < n; ++v) {
          const bool ix = in(xk, v), iy = in(yl, v);
          if (!ix && !iy) ++n00;
          if (!ix && iy) ++n01;
          if (ix && !iy) ++n10;
          if (ix && iy) ++n11;
        }
        const double p00 = n00 / n, p01 = n01 / n, p10 = n10 / n, p11 = n11 / n;
        if (h(p00) + h(p11) > h(p01) + h(p10)) {
          const double joint = h(p00) + h(p01) + h(p10) + h(p11);
          const double hy = h(p01 + p11) + h(p00 + p10);
          best = std::min(best, joint - hy);
        }
      }
      sum += std::max(0.0, best);
    }
    return sum;
  };
  double hx = 0, hy = 0;
  for (const auto& c : x) hx += entropy_of(c);
  for (const auto& c : y) hy += entropy_of(c);
  const double mutual = 0.5 * (hx - conditional(x, y) + hy - conditional(y, x));
  return std::clamp(mutual / std::max(hx, hy), 0.0, 1.0);
}

}  // namespace oracle

#endif  // GENPERM_TESTS_ORACLE_NAIVE_HPP_
