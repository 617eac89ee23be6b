#pragma once

// Minimum s-t cuts (unit capacity arcs) as a distributive lattice: max-flow,
// chains from arc-disjoint flow paths, the compact representation derived
// from the residual graph, and the oracles for disjoint cuts.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "divlat/disjoint.hpp"
#include "divlat/diverse.hpp"
#include "divlat/error.hpp"
#include "divlat/lattice.hpp"

namespace divlat::mincut {

using VertexId = std::size_t;
using ArcId = std::size_t;

struct FlowNetwork {
  std::size_t vertex_count = 0;
  std::vector<std::pair<VertexId, VertexId>> arcs;  // parallel arcs are distinct elements
  VertexId source = 0;
  VertexId sink = 0;

  void validate() const {
    if (vertex_count < 2) throw InputError("network needs at least two vertices");
    if (source >= vertex_count || sink >= vertex_count) throw InputError("source or sink out of range");
    if (source == sink) throw InputError("source and sink must differ");
    for (const auto& [u, v] : arcs) {
      if (u >= vertex_count || v >= vertex_count) throw InputError("arc endpoint out of range");
    }
  }
};

// Graph text format: `p <vertices> <arcs> <s> <t>` then `a <u> <v>` per arc,
// 1-indexed; lines starting with '#' are comments.
inline FlowNetwork parse_network(std::istream& in) {
  FlowNetwork net;
  bool have_header = false;
  std::size_t declared_arcs = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    auto fail = [&](const std::string& why) {
      throw InputError("graph line " + std::to_string(line_no) + ": " + why);
    };
    if (tag == "p") {
      if (have_header) fail("duplicate header");
      long long nv = 0, na = 0, s = 0, t = 0;
      if (!(ls >> nv >> na >> s >> t)) fail("expected 'p <vertices> <arcs> <s> <t>'");
      if (nv < 2 || na < 0 || s < 1 || t < 1 || s > nv || t > nv) fail("header values out of range");
      net.vertex_count = static_cast<std::size_t>(nv);
      declared_arcs = static_cast<std::size_t>(na);
      net.source = static_cast<VertexId>(s - 1);
      net.sink = static_cast<VertexId>(t - 1);
      have_header = true;
    } else if (tag == "a") {
      if (!have_header) fail("arc before header");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) fail("expected 'a <u> <v>'");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > net.vertex_count ||
          static_cast<std::size_t>(v) > net.vertex_count) {
        fail("arc endpoint out of range");
      }
      net.arcs.emplace_back(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1));
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra && extra[0] != '#') fail("trailing tokens");
  }
  if (!have_header) throw InputError("graph input has no 'p' header");
  if (net.arcs.size() != declared_arcs) {
    throw InputError("header declares " + std::to_string(declared_arcs) + " arcs but " +
                     std::to_string(net.arcs.size()) + " were given");
  }
  net.validate();
  return net;
}

// An integral maximum flow decomposed into arc-disjoint s-t paths; flow[a]
// is 1 exactly on path arcs (circulations are cancelled).
struct MaxFlow {
  std::size_t value = 0;
  std::vector<std::uint8_t> flow;
  std::vector<std::vector<ArcId>> paths;
};

namespace detail {

// Dinic's blocking-flow method on unit capacities.
inline std::vector<std::uint8_t> dinic(const FlowNetwork& net) {
  struct Edge {
    VertexId to;
    int cap;
    std::size_t rev;
    ArcId arc;
    bool forward;
  };
  std::vector<std::vector<Edge>> g(net.vertex_count);
  for (ArcId a = 0; a < net.arcs.size(); ++a) {
    auto [u, v] = net.arcs[a];
    if (u == v) continue;
    g[u].push_back({v, 1, g[v].size(), a, true});
    g[v].push_back({u, 0, g[u].size() - 1, a, false});
  }
  std::vector<int> level(net.vertex_count);
  std::vector<std::size_t> it(net.vertex_count);
  auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::queue<VertexId> q;
    level[net.source] = 0;
    q.push(net.source);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (const Edge& e : g[u]) {
        if (e.cap > 0 && level[e.to] < 0) {
          level[e.to] = level[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level[net.sink] >= 0;
  };
  // Iterative DFS for one augmenting path in the level graph.
  auto augment = [&]() -> bool {
    std::vector<std::pair<VertexId, std::size_t>> path;  // (vertex, edge index)
    VertexId u = net.source;
    while (u != net.sink) {
      bool advanced = false;
      for (; it[u] < g[u].size(); ++it[u]) {
        const Edge& e = g[u][it[u]];
        if (e.cap > 0 && level[e.to] == level[u] + 1) {
          path.emplace_back(u, it[u]);
          u = e.to;
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        if (path.empty()) return false;
        level[u] = -1;  // dead end
        u = path.back().first;
        path.pop_back();
        ++it[u];
      }
    }
    for (auto [v, idx] : path) {
      Edge& e = g[v][idx];
      e.cap -= 1;
      g[e.to][e.rev].cap += 1;
    }
    return true;
  };
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    while (augment()) {
    }
  }
  std::vector<std::uint8_t> flow(net.arcs.size(), 0);
  for (VertexId u = 0; u < net.vertex_count; ++u) {
    for (const Edge& e : g[u]) {
      if (e.forward && e.cap == 0) flow[e.arc] = 1;
    }
  }
  return flow;
}

}  // namespace detail

inline MaxFlow max_flow(const FlowNetwork& net) {
  net.validate();
  std::vector<std::uint8_t> remaining = detail::dinic(net);
  std::vector<std::vector<ArcId>> out_arcs(net.vertex_count);
  for (ArcId a = 0; a < net.arcs.size(); ++a) out_arcs[net.arcs[a].first].push_back(a);

  MaxFlow mf;
  mf.flow.assign(net.arcs.size(), 0);
  // Peel paths greedily by smallest arc id; a revisited vertex closes a
  // circulation, which is cancelled.
  while (true) {
    std::vector<ArcId> walk;
    std::vector<std::ptrdiff_t> pos_of(net.vertex_count, -1);
    VertexId u = net.source;
    pos_of[u] = 0;
    bool found = true;
    while (u != net.sink) {
      ArcId next = std::numeric_limits<ArcId>::max();
      for (ArcId a : out_arcs[u]) {
        if (remaining[a]) {
          next = a;
          break;
        }
      }
      if (next == std::numeric_limits<ArcId>::max()) {
        found = false;
        break;
      }
      VertexId v = net.arcs[next].second;
      if (pos_of[v] >= 0) {
        // Cancel the cycle v -> ... -> u -> v.
        remaining[next] = 0;
        auto start = static_cast<std::size_t>(pos_of[v]);
        for (std::size_t i = start; i < walk.size(); ++i) {
          remaining[walk[i]] = 0;
          pos_of[net.arcs[walk[i]].second] = -1;
        }
        walk.resize(start);
        pos_of[v] = static_cast<std::ptrdiff_t>(start);
        u = v;
        continue;
      }
      walk.push_back(next);
      pos_of[v] = static_cast<std::ptrdiff_t>(walk.size());
      u = v;
    }
    if (!found) break;
    for (ArcId a : walk) {
      remaining[a] = 0;
      mf.flow[a] = 1;
    }
    mf.paths.push_back(std::move(walk));
  }
  mf.value = mf.paths.size();
  return mf;
}

// Residual graph of a flow: arc (u, v) gives u -> v when unused and v -> u
// when it carries flow.
class Residual {
 public:
  Residual(const FlowNetwork& net, const MaxFlow& mf) : adj_(net.vertex_count) {
    for (ArcId a = 0; a < net.arcs.size(); ++a) {
      auto [u, v] = net.arcs[a];
      if (mf.flow[a]) {
        adj_[v].push_back(u);
      } else {
        adj_[u].push_back(v);
      }
    }
  }

  // Characteristic vector of everything residual-reachable from `seeds`.
  std::vector<std::uint8_t> closure(const std::vector<VertexId>& seeds) const {
    std::vector<std::uint8_t> in(adj_.size(), 0);
    std::vector<VertexId> stack;
    for (VertexId s : seeds) {
      if (!in[s]) {
        in[s] = 1;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : adj_[u]) {
        if (!in[v]) {
          in[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return in;
  }

  // Vertices that can reach `target`.
  std::vector<std::uint8_t> coreach(VertexId target) const {
    std::vector<std::vector<VertexId>> radj(adj_.size());
    for (VertexId u = 0; u < adj_.size(); ++u) {
      for (VertexId v : adj_[u]) radj[v].push_back(u);
    }
    std::vector<std::uint8_t> in(adj_.size(), 0);
    std::vector<VertexId> stack{target};
    in[target] = 1;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : radj[u]) {
        if (!in[v]) {
          in[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return in;
  }

 private:
  std::vector<std::vector<VertexId>> adj_;
};

// One chain per flow path, ordered from s to t. Arcs on no path are never in
// a minimum cut; they sit at the bottom of chain 0 in arc-id order.
inline ChainDecomposition chain_decomposition(const FlowNetwork& net, const MaxFlow& mf) {
  if (mf.value == 0) throw InfeasibleError("no s-t path: the network has no minimum cut to diversify");
  std::vector<std::vector<ElementId>> chains(mf.paths.size());
  for (ArcId a = 0; a < net.arcs.size(); ++a) {
    if (!mf.flow[a]) chains[0].push_back(a);
  }
  for (std::size_t l = 0; l < mf.paths.size(); ++l) {
    chains[l].insert(chains[l].end(), mf.paths[l].begin(), mf.paths[l].end());
  }
  return ChainDecomposition(net.arcs.size(), std::move(chains));
}

// Compact representation of the mincut lattice. Irreducible p is the least
// minimum cut containing some path arc e = (u, v): its source side is the
// residual closure of the bottom source side plus u (provided v stays
// outside). node_vertices[p] is what that source side adds to the bottom one.
struct PQRepresentation {
  Poset node_poset;
  std::vector<std::vector<VertexId>> node_vertices;
  std::vector<VertexId> source_component;  // source side of the bottom cut (0_L)
  std::size_t flow_value = 0;
  CompactLattice lattice;
};

// Everything derived from one network, built once.
struct MinCutInstance {
  FlowNetwork net;
  MaxFlow flow;
  ChainDecomposition chains;
  PQRepresentation pq;
};

namespace detail {

// The cut of a residual-closed source side: on every path, the unique arc
// leaving the source side.
inline SolutionVector cut_of(const FlowNetwork& net, const MaxFlow& mf, const ChainDecomposition& d,
                             const std::vector<std::uint8_t>& side) {
  SolutionVector x(std::vector<std::size_t>(mf.paths.size(), 0));
  for (std::size_t l = 0; l < mf.paths.size(); ++l) {
    std::size_t crossings = 0;
    for (ArcId a : mf.paths[l]) {
      auto [u, v] = net.arcs[a];
      if (side[u] && !side[v]) {
        ++crossings;
        x.ranks[l] = d.slot(a).rank;
      } else if (!side[u] && side[v]) {
        throw ContractError("flow path re-enters a closed source side");
      }
    }
    if (crossings != 1) throw ContractError("source side is not crossed exactly once by a flow path");
  }
  return x;
}

inline std::vector<VertexId> members(const std::vector<std::uint8_t>& side) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < side.size(); ++v) {
    if (side[v]) out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline PQRepresentation build_pq(const FlowNetwork& net, const MaxFlow& mf, const ChainDecomposition& d) {
  if (mf.value == 0) throw InfeasibleError("no s-t path: the network has no minimum cut");
  Residual res(net, mf);
  const auto base = res.closure({net.source});
  const SolutionVector bottom = detail::cut_of(net, mf, d, base);

  // Least cut containing each path arc, keyed by cut. Closed source sides are
  // prefixes of every path, so intersecting those of one cut keeps the cut.
  std::vector<std::pair<SolutionVector, std::vector<std::uint8_t>>> found;
  for (const auto& path : mf.paths) {
    for (ArcId a : path) {
      auto [u, v] = net.arcs[a];
      std::vector<VertexId> seeds = detail::members(base);
      seeds.push_back(u);
      auto side = res.closure(seeds);
      if (side[v] || side[net.sink]) continue;
      SolutionVector cut = detail::cut_of(net, mf, d, side);
      auto it = std::find_if(found.begin(), found.end(), [&](const auto& f) { return f.first == cut; });
      if (it == found.end()) {
        found.emplace_back(std::move(cut), std::move(side));
      } else {
        for (VertexId w = 0; w < side.size(); ++w) it->second[w] &= side[w];
      }
    }
  }
  std::vector<SolutionVector> candidates;
  for (const auto& f : found) candidates.push_back(f.first);
  CompactLattice lattice = compact_lattice_from_candidates(bottom, candidates);

  PQRepresentation pq;
  pq.node_poset = lattice.irreducible_poset();
  for (const SolutionVector& irr : lattice.irreducible_solutions()) {
    auto it = std::find_if(found.begin(), found.end(), [&](const auto& f) { return f.first == irr; });
    std::vector<VertexId> extra;
    for (VertexId w = 0; w < net.vertex_count; ++w) {
      if (it->second[w] && !base[w]) extra.push_back(w);
    }
    pq.node_vertices.push_back(std::move(extra));
  }
  pq.source_component = detail::members(base);
  pq.flow_value = mf.value;
  pq.lattice = std::move(lattice);
  return pq;
}

inline MinCutInstance analyze(const FlowNetwork& net) {
  MinCutInstance inst;
  inst.net = net;
  inst.flow = max_flow(net);
  inst.chains = chain_decomposition(net, inst.flow);
  inst.pq = build_pq(net, inst.flow, inst.chains);
  return inst;
}

// Source side = bottom source side plus the vertices of the ideal's nodes;
// the cut is the set of path arcs leaving it.
inline SolutionVector decode_cut(const MinCutInstance& inst, const Ideal& i) {
  if (!is_ideal(inst.pq.node_poset, i)) throw ContractError("decode_cut: input is not an ideal");
  std::vector<std::uint8_t> side(inst.net.vertex_count, 0);
  for (VertexId v : inst.pq.source_component) side[v] = 1;
  for (ElementId p : i.members) {
    for (VertexId v : inst.pq.node_vertices[p]) side[v] = 1;
  }
  return detail::cut_of(inst.net, inst.flow, inst.chains, side);
}

// Arc ids of a cut.
inline std::vector<ArcId> cut_arcs(const MinCutInstance& inst, const SolutionVector& x) {
  return elements_of(inst.chains, x);
}

// True iff removing `arcs` leaves no s-t path.
inline bool separates(const FlowNetwork& net, const std::vector<ArcId>& arcs) {
  std::vector<std::uint8_t> removed(net.arcs.size(), 0);
  for (ArcId a : arcs) removed[a] = 1;
  std::vector<std::uint8_t> seen(net.vertex_count, 0);
  std::vector<VertexId> stack{net.source};
  seen[net.source] = 1;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (ArcId a = 0; a < net.arcs.size(); ++a) {
      if (removed[a] || net.arcs[a].first != u) continue;
      VertexId v = net.arcs[a].second;
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return !seen[net.sink];
}

inline DiverseResult diverse_min_cuts(const MinCutInstance& inst, std::size_t k, const Measure& m,
                                      SolverChoice choice) {
  return solve_diverse(inst.pq.lattice, inst.chains, k, m, choice);
}

inline DiverseResult diverse_min_cuts(const FlowNetwork& net, std::size_t k, const Measure& m,
                                      SolverChoice choice) {
  MinCutInstance inst = analyze(net);
  return diverse_min_cuts(inst, k, m, choice);
}

// o_min / o_max: source- and sink-minimal cuts. o_next_disjoint(X) closes the
// bottom source side together with the heads of X's arcs; every cut lying
// strictly past X on all paths must contain those heads on its source side,
// so this closure gives the least one, unless it swallows t.
inline DisjointOracles mincut_oracles(const MinCutInstance& inst) {
  DisjointOracles o;
  o.o_min = [&inst] { return inst.pq.lattice.bottom(); };
  o.o_max = [&inst] {
    Residual res(inst.net, inst.flow);
    auto to_sink = res.coreach(inst.net.sink);
    std::vector<std::uint8_t> side(inst.net.vertex_count, 0);
    for (VertexId v = 0; v < side.size(); ++v) side[v] = to_sink[v] ? 0 : 1;
    return detail::cut_of(inst.net, inst.flow, inst.chains, side);
  };
  o.o_next_disjoint = [&inst](const SolutionVector& x) -> std::optional<SolutionVector> {
    Residual res(inst.net, inst.flow);
    std::vector<VertexId> seeds = inst.pq.source_component;
    for (ArcId a : cut_arcs(inst, x)) seeds.push_back(inst.net.arcs[a].second);
    auto side = res.closure(seeds);
    if (side[inst.net.sink]) return std::nullopt;
    SolutionVector y = detail::cut_of(inst.net, inst.flow, inst.chains, side);
    if (!strictly_below_everywhere(x, y)) throw ContractError("mincut successor is not disjoint from its input");
    return y;
  };
  return o;
}

}  // namespace divlat::mincut
