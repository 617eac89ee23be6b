#pragma once

// Largest family of pairwise disjoint solutions: walk upward from the bottom
// solution, each step jumping to the least solution that is disjoint from
// and above the previous one, until a solution meets the top element.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "divlat/error.hpp"
#include "divlat/lattice.hpp"
#include "divlat/poset.hpp"

namespace divlat {

struct DisjointOracles {
  std::function<SolutionVector()> o_min;
  std::function<SolutionVector()> o_max;
  // Least solution Y with X below Y and X, Y disjoint; nullopt if none.
  std::function<std::optional<SolutionVector>(const SolutionVector&)> o_next_disjoint;
};

struct DisjointResult {
  std::vector<SolutionVector> solutions;
  std::size_t oracle_calls = 0;
};

inline DisjointResult max_disjoint(const DisjointOracles& oracles) {
  DisjointResult out;
  const SolutionVector top = oracles.o_max();
  SolutionVector x = oracles.o_min();
  out.oracle_calls = 2;
  if (!precedes(x, top)) throw ContractError("o_min is not below o_max");
  // Anything shared by bottom and top lies in every solution, so the loop
  // ends exactly when the current solution meets the top.
  while (disjoint(x, top)) {
    out.solutions.push_back(x);
    std::optional<SolutionVector> next = oracles.o_next_disjoint(x);
    ++out.oracle_calls;
    if (!next) throw ContractError("no disjoint successor although the top element is disjoint");
    if (!strictly_below_everywhere(x, *next)) {
      throw ContractError("o_next_disjoint returned a solution that is not a disjoint successor");
    }
    if (!precedes(*next, top)) throw ContractError("o_next_disjoint returned a solution above o_max");
    x = std::move(*next);
  }
  out.solutions.push_back(std::move(x));
  return out;
}

// Reference disjoint-successor oracle over an explicitly enumerated lattice:
// materializes the subposet of the ground poset induced by the elements of
// all disjoint successors of x and reads its per-chain minimum, which is the
// bottom of the sublattice of disjoint successors.
inline std::optional<SolutionVector> reference_next_disjoint(const ChainDecomposition& d,
                                                             std::span<const SolutionVector> lattice,
                                                             const SolutionVector& x) {
  ElementSet support;
  for (const SolutionVector& y : lattice) {
    if (precedes(x, y) && disjoint(x, y)) {
      for (ElementId e : elements_of(d, y)) support.push_back(e);
    }
  }
  support = normalize(std::move(support));
  if (support.empty()) return std::nullopt;
  Poset ground = d.ground_poset();
  Poset sub = induced_subposet(ground, support);
  // Minimal elements of the induced subposet, one per chain.
  std::vector<std::size_t> ranks(d.chain_count(), 0);
  std::vector<std::uint8_t> hit(d.chain_count(), 0);
  for (ElementId i = 0; i < sub.size(); ++i) {
    if (!sub.hasse_predecessors(i).empty()) continue;
    auto slot = d.slot(support[i]);
    if (hit[slot.chain]) throw ContractError("induced subposet has two minima on one chain");
    hit[slot.chain] = 1;
    ranks[slot.chain] = slot.rank;
  }
  SolutionVector bottom(std::move(ranks));
  for (const SolutionVector& y : lattice) {
    if (y == bottom) return bottom;
  }
  throw ContractError("bottom of the disjoint successors is not a feasible solution");
}

}  // namespace divlat
