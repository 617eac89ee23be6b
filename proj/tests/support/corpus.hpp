#pragma once

// Seeded instance generators and small fixtures shared by the unit and
// acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "divlat/bruteforce.hpp"
#include "divlat/lattice.hpp"
#include "divlat/matching.hpp"
#include "divlat/mincut.hpp"
#include "divlat/sfm.hpp"

#ifndef DIVLAT_DATA_DIR
#define DIVLAT_DATA_DIR "data"
#endif

namespace divlat::testing {

inline std::string data_path(const std::string& name) { return std::string(DIVLAT_DATA_DIR) + "/" + name; }

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// 2x3 grid lattice: chains of 2 and 3 elements, irreducibles
// x2 = (1,0), x3 = (0,1), x5 = (0,2) with x3 below x5.
inline ChainDecomposition grid_chains() { return ChainDecomposition(5, {{0, 1}, {2, 3, 4}}); }

inline CompactLattice grid_lattice() {
  return CompactLattice(Poset(3, {{1, 2}}),
                        {SolutionVector({1, 0}), SolutionVector({0, 1}), SolutionVector({0, 2})},
                        SolutionVector({0, 0}));
}

inline mincut::FlowNetwork network(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> arcs1,
                                   std::size_t s1, std::size_t t1) {
  mincut::FlowNetwork net;
  net.vertex_count = vertices;
  for (auto [u, v] : arcs1) net.arcs.emplace_back(u - 1, v - 1);
  net.source = s1 - 1;
  net.sink = t1 - 1;
  return net;
}

// s=1 -> a=2 -> t=4, s -> b=3 -> t. Arc ids: sa 0, sb 1, at 2, bt 3.
inline mincut::FlowNetwork diamond() { return network(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}, 1, 4); }

// s=1 -> u=2 -> v=3 -> t=4.
inline mincut::FlowNetwork path3() { return network(4, {{1, 2}, {2, 3}, {3, 4}}, 1, 4); }

inline matching::PreferenceProfile profile(std::vector<std::vector<std::size_t>> a1,
                                           std::vector<std::vector<std::size_t>> b1) {
  for (auto* side : {&a1, &b1}) {
    for (auto& row : *side) {
      for (auto& x : row) --x;
    }
  }
  return matching::PreferenceProfile(std::move(a1), std::move(b1));
}

inline matching::PreferenceProfile two_matchings() { return profile({{1, 2}, {2, 1}}, {{2, 1}, {1, 2}}); }

// Latin-square A side with reversed B side: 10 stable matchings.
inline matching::PreferenceProfile latin4() {
  return profile({{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}},
                 {{4, 3, 2, 1}, {3, 4, 1, 2}, {2, 1, 4, 3}, {1, 2, 3, 4}});
}

// a_i ranks b_i, b_{i+1}, ... cyclically.
inline matching::PreferenceProfile latin4_cyclic() {
  return profile({{1, 2, 3, 4}, {2, 3, 4, 1}, {3, 4, 1, 2}, {4, 1, 2, 3}},
                 {{2, 3, 4, 1}, {3, 4, 1, 2}, {4, 1, 2, 3}, {1, 2, 3, 4}});
}

inline matching::PreferenceProfile unique_matching() {
  return profile({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
}

inline bool st_connected(const mincut::FlowNetwork& net) { return !mincut::separates(net, {}); }

// Random digraph with s = 0 and t = last vertex, no loops, s-t connected.
inline mincut::FlowNetwork random_network(std::mt19937_64& rng, std::size_t min_v, std::size_t max_v,
                                          std::size_t min_a, std::size_t max_a) {
  while (true) {
    mincut::FlowNetwork net;
    net.vertex_count = uniform(rng, min_v, max_v);
    net.source = 0;
    net.sink = net.vertex_count - 1;
    const std::size_t arcs = uniform(rng, min_a, max_a);
    while (net.arcs.size() < arcs) {
      std::size_t u = uniform(rng, 0, net.vertex_count - 1);
      std::size_t v = uniform(rng, 0, net.vertex_count - 1);
      if (u != v) net.arcs.emplace_back(u, v);
    }
    if (st_connected(net)) return net;
  }
}

// Parallel s-t paths with extra rungs and an occasional doubled arc; these
// have many more minimum cuts than uniform digraphs.
inline mincut::FlowNetwork random_ladder(std::mt19937_64& rng, std::size_t max_vertices) {
  mincut::FlowNetwork net;
  net.source = 0;
  net.sink = 1;
  std::size_t next = 2;
  const std::size_t paths = uniform(rng, 1, 3);
  for (std::size_t l = 0; l < paths; ++l) {
    std::size_t prev = net.source;
    const std::size_t len = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < len && next < max_vertices; ++i) {
      net.arcs.emplace_back(prev, next);
      prev = next++;
    }
    net.arcs.emplace_back(prev, net.sink);
  }
  net.vertex_count = next;
  if (next > 3) {
    const std::size_t rungs = uniform(rng, 0, 3);
    for (std::size_t i = 0; i < rungs; ++i) {
      std::size_t u = uniform(rng, 2, next - 1);
      std::size_t v = uniform(rng, 2, next - 1);
      if (u != v) net.arcs.emplace_back(u, v);
    }
  }
  if (uniform(rng, 0, 2) == 0) net.arcs.push_back(net.arcs[uniform(rng, 0, net.arcs.size() - 1)]);
  return net;
}

inline matching::PreferenceProfile random_profile(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<std::size_t>> a(n), b(n);
  for (auto* side : {&a, &b}) {
    for (auto& row : *side) {
      row.resize(n);
      std::iota(row.begin(), row.end(), 0);
      std::shuffle(row.begin(), row.end(), rng);
    }
  }
  return matching::PreferenceProfile(std::move(a), std::move(b));
}

// Random poset on m elements: relations only from lower to higher id.
inline Poset random_poset(std::mt19937_64& rng, std::size_t m, double density) {
  std::vector<Poset::Edge> rel;
  std::bernoulli_distribution coin(density);
  for (ElementId a = 0; a < m; ++a) {
    for (ElementId b = a + 1; b < m; ++b) {
      if (coin(rng)) rel.emplace_back(a, b);
    }
  }
  return Poset(m, rel);
}

// Random submodular function on the ideals of a random poset: modular
// weights, concave-of-count terms on random groups, and an undirected cut.
inline SubmodularObjective random_objective(std::mt19937_64& rng, std::size_t max_elements) {
  const std::size_t m = uniform(rng, 1, max_elements);
  Poset host = random_poset(rng, m, std::uniform_real_distribution<double>(0.0, 0.4)(rng));
  std::vector<Value> weight(m);
  Value lo = 0, hi = 0;
  for (auto& w : weight) {
    w = std::uniform_int_distribution<Value>(-9, 6)(rng);
    (w < 0 ? lo : hi) += w;
  }
  struct Group {
    std::vector<std::uint8_t> in;
    Value cap;
    Value scale;
  };
  std::vector<Group> groups(uniform(rng, 0, 3));
  for (auto& g : groups) {
    g.in.resize(m);
    for (auto& x : g.in) x = static_cast<std::uint8_t>(uniform(rng, 0, 1));
    g.cap = static_cast<Value>(uniform(rng, 1, 3));
    g.scale = static_cast<Value>(uniform(rng, 1, 4));
    hi += g.cap * g.scale;
  }
  std::vector<std::tuple<ElementId, ElementId, Value>> edges;
  for (std::size_t i = uniform(rng, 0, m); i > 0; --i) {
    ElementId u = uniform(rng, 0, m - 1), v = uniform(rng, 0, m - 1);
    if (u == v) continue;
    Value w = static_cast<Value>(uniform(rng, 1, 3));
    edges.emplace_back(u, v, w);
    hi += w;
  }
  SubmodularObjective obj;
  obj.host = std::move(host);
  obj.lower_bound = lo;
  obj.upper_bound = hi;
  obj.evaluate = [weight, groups, edges](const Ideal& i) {
    std::vector<std::uint8_t> mask(weight.size(), 0);
    for (ElementId e : i.members) mask[e] = 1;
    Value total = 0;
    for (ElementId e : i.members) total += weight[e];
    for (const auto& g : groups) {
      Value c = 0;
      for (ElementId e = 0; e < mask.size(); ++e) c += mask[e] && g.in[e];
      total += g.scale * std::min(c, g.cap);
    }
    for (const auto& [u, v, w] : edges) {
      if (mask[u] != mask[v]) total += w;
    }
    return total;
  };
  return obj;
}

// A uniformly random element of an explicitly enumerated lattice.
inline const SolutionVector& pick(std::mt19937_64& rng, const std::vector<SolutionVector>& elements) {
  return elements[uniform(rng, 0, elements.size() - 1)];
}

inline std::vector<SolutionVector> random_tuple(std::mt19937_64& rng, const std::vector<SolutionVector>& elements,
                                                std::size_t k) {
  std::vector<SolutionVector> t;
  for (std::size_t i = 0; i < k; ++i) t.push_back(pick(rng, elements));
  return t;
}

inline std::vector<SolutionVector> sorted(std::vector<SolutionVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace divlat::testing
