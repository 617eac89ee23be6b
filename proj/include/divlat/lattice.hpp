#pragma once

// Distributive lattices of feasible solutions given by chain decompositions
// and Birkhoff compact representations, plus the lattice of left-right
// ordered k-tuples built on top of them.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "divlat/error.hpp"
#include "divlat/poset.hpp"

namespace divlat {

// Partition of the ground set E into r chains. Position 0 of a chain is its
// least element.
class ChainDecomposition {
 public:
  struct Slot {
    std::size_t chain = 0;
    std::size_t rank = 0;
  };

  ChainDecomposition() = default;

  ChainDecomposition(std::size_t ground_size, std::vector<std::vector<ElementId>> chains)
      : chains_(std::move(chains)), slots_(ground_size) {
    std::vector<std::uint8_t> seen(ground_size, 0);
    for (std::size_t c = 0; c < chains_.size(); ++c) {
      if (chains_[c].empty()) throw InputError("chain " + std::to_string(c) + " is empty");
      for (std::size_t r = 0; r < chains_[c].size(); ++r) {
        ElementId e = chains_[c][r];
        if (e >= ground_size) throw InputError("chain element out of range");
        if (seen[e]) throw InputError("element " + std::to_string(e) + " lies on two chains");
        seen[e] = 1;
        slots_[e] = {c, r};
      }
    }
    for (ElementId e = 0; e < ground_size; ++e) {
      if (!seen[e]) throw InputError("element " + std::to_string(e) + " is on no chain");
    }
  }

  std::size_t chain_count() const { return chains_.size(); }
  std::size_t ground_size() const { return slots_.size(); }
  const std::vector<ElementId>& chain(std::size_t c) const { return chains_.at(c); }
  const std::vector<std::vector<ElementId>>& chains() const { return chains_; }
  Slot slot(ElementId e) const { return slots_.at(e); }
  ElementId element(std::size_t c, std::size_t rank) const { return chains_.at(c).at(rank); }

  // The ground poset: disjoint union of the chains.
  Poset ground_poset() const {
    std::vector<Poset::Edge> rel;
    for (const auto& ch : chains_) {
      for (std::size_t r = 0; r + 1 < ch.size(); ++r) rel.emplace_back(ch[r], ch[r + 1]);
    }
    return Poset(ground_size(), rel);
  }

 private:
  std::vector<std::vector<ElementId>> chains_;
  std::vector<Slot> slots_;
};

// One feasible solution: ranks[l] is the position of the chosen element on
// chain l.
struct SolutionVector {
  std::vector<std::size_t> ranks;

  SolutionVector() = default;
  explicit SolutionVector(std::vector<std::size_t> r) : ranks(std::move(r)) {}

  std::size_t size() const { return ranks.size(); }
  std::size_t operator[](std::size_t l) const { return ranks[l]; }

  friend bool operator==(const SolutionVector&, const SolutionVector&) = default;
  friend auto operator<=>(const SolutionVector&, const SolutionVector&) = default;
};

inline void check_compatible(const SolutionVector& x, const SolutionVector& y) {
  if (x.size() != y.size()) {
    throw InputError("solution vectors have different chain counts (" + std::to_string(x.size()) +
                     " vs " + std::to_string(y.size()) + ")");
  }
}

inline void check_solution(const ChainDecomposition& d, const SolutionVector& x) {
  if (x.size() != d.chain_count()) throw InputError("solution vector does not match decomposition");
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] >= d.chain(l).size()) throw InputError("solution rank exceeds chain length");
  }
}

// Componentwise order.
inline bool precedes(const SolutionVector& x, const SolutionVector& y) {
  check_compatible(x, y);
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] > y[l]) return false;
  }
  return true;
}

// Strictly greater on every chain.
inline bool strictly_below_everywhere(const SolutionVector& x, const SolutionVector& y) {
  check_compatible(x, y);
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] >= y[l]) return false;
  }
  return true;
}

// Ground-set disjointness: chains are disjoint, so solutions are disjoint
// iff they differ on every chain.
inline bool disjoint(const SolutionVector& x, const SolutionVector& y) {
  check_compatible(x, y);
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] == y[l]) return false;
  }
  return true;
}

inline SolutionVector join(const SolutionVector& x, const SolutionVector& y) {
  check_compatible(x, y);
  SolutionVector out = x;
  for (std::size_t l = 0; l < x.size(); ++l) out.ranks[l] = std::max(x[l], y[l]);
  return out;
}

inline SolutionVector meet(const SolutionVector& x, const SolutionVector& y) {
  check_compatible(x, y);
  SolutionVector out = x;
  for (std::size_t l = 0; l < x.size(); ++l) out.ranks[l] = std::min(x[l], y[l]);
  return out;
}

// Ground elements of a solution, one per chain, in chain order.
inline std::vector<ElementId> elements_of(const ChainDecomposition& d, const SolutionVector& x) {
  check_solution(d, x);
  std::vector<ElementId> out(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) out[l] = d.element(l, x[l]);
  return out;
}

// Inverse of elements_of. Throws ContractError unless `elements` picks
// exactly one element from every chain.
inline SolutionVector from_elements(const ChainDecomposition& d, const ElementSet& elements) {
  std::vector<std::size_t> ranks(d.chain_count(), 0);
  std::vector<std::uint8_t> hit(d.chain_count(), 0);
  for (ElementId e : elements) {
    if (e >= d.ground_size()) throw InputError("element id out of range");
    auto s = d.slot(e);
    if (hit[s.chain]) throw ContractError("element set uses chain " + std::to_string(s.chain) + " twice");
    hit[s.chain] = 1;
    ranks[s.chain] = s.rank;
  }
  for (std::size_t c = 0; c < hit.size(); ++c) {
    if (!hit[c]) throw ContractError("element set misses chain " + std::to_string(c));
  }
  return SolutionVector(std::move(ranks));
}

// A k-tuple of solutions with solutions[i] below solutions[j] for i < j.
struct LrTuple {
  std::vector<SolutionVector> solutions;

  std::size_t size() const { return solutions.size(); }
  const SolutionVector& operator[](std::size_t i) const { return solutions[i]; }

  friend bool operator==(const LrTuple&, const LrTuple&) = default;
};

inline bool is_left_right_ordered(const std::vector<SolutionVector>& tuple) {
  for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
    if (!precedes(tuple[i], tuple[i + 1])) return false;
  }
  return true;
}

// Pairwise meet/join exchange: after round i, entry i is below every later
// entry. Meet and join together keep every element multiplicity.
inline LrTuple lro(std::vector<SolutionVector> tuple) {
  for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      SolutionVector lo = meet(tuple[i], tuple[j]);
      SolutionVector hi = join(tuple[i], tuple[j]);
      tuple[i] = std::move(lo);
      tuple[j] = std::move(hi);
    }
  }
  return LrTuple{std::move(tuple)};
}

// Birkhoff representation: the poset J(L) of join-irreducibles together with
// the solution each irreducible stands for, and the bottom element 0_L.
class CompactLattice {
 public:
  CompactLattice() = default;

  CompactLattice(Poset irreducible_poset, std::vector<SolutionVector> irreducible_solution,
                 SolutionVector bottom)
      : poset_(std::move(irreducible_poset)),
        solution_(std::move(irreducible_solution)),
        bottom_(std::move(bottom)),
        top_(bottom_) {
    if (solution_.size() != poset_.size()) {
      throw InputError("irreducible count does not match the irreducible poset");
    }
    for (const auto& s : solution_) top_ = join(top_, s);
    // The order on J(L) must be the order inherited from L.
    for (ElementId a = 0; a < poset_.size(); ++a) {
      for (ElementId b = 0; b < poset_.size(); ++b) {
        if (poset_.leq(a, b) != precedes(solution_[a], solution_[b])) {
          throw ContractError("irreducible poset disagrees with the componentwise order");
        }
      }
    }
  }

  const Poset& irreducible_poset() const { return poset_; }
  const std::vector<SolutionVector>& irreducible_solutions() const { return solution_; }
  const SolutionVector& irreducible_solution(ElementId p) const { return solution_.at(p); }
  const SolutionVector& bottom() const { return bottom_; }
  const SolutionVector& top() const { return top_; }
  std::size_t irreducible_count() const { return poset_.size(); }
  std::size_t chain_count() const { return bottom_.size(); }

 private:
  Poset poset_;
  std::vector<SolutionVector> solution_;
  SolutionVector bottom_;
  SolutionVector top_;
};

// Builds J(L) from lattice elements that include every join-irreducible
// (typically the elements min{X : X(l) >= c}). Candidates equal to the join
// of the candidates strictly below them are reducible and dropped; the rest
// are ordered componentwise.
inline CompactLattice compact_lattice_from_candidates(const SolutionVector& bottom,
                                                      std::vector<SolutionVector> candidates) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase(candidates, bottom);
  std::vector<SolutionVector> irreducible;
  for (const auto& x : candidates) {
    SolutionVector below = bottom;
    for (const auto& y : candidates) {
      if (y != x && precedes(y, x)) below = join(below, y);
    }
    if (below != x) irreducible.push_back(x);
  }
  candidates = std::move(irreducible);
  std::vector<Poset::Edge> rel;
  for (ElementId a = 0; a < candidates.size(); ++a) {
    for (ElementId b = 0; b < candidates.size(); ++b) {
      if (a != b && precedes(candidates[a], candidates[b])) rel.emplace_back(a, b);
    }
  }
  Poset p(candidates.size(), rel);
  return CompactLattice(std::move(p), std::move(candidates), bottom);
}

inline SolutionVector decode_ideal(const CompactLattice& cl, const Ideal& i) {
  if (!is_ideal(cl.irreducible_poset(), i)) throw ContractError("decode_ideal: input is not an ideal");
  SolutionVector x = cl.bottom();
  for (ElementId p : i.members) x = join(x, cl.irreducible_solution(p));
  return x;
}

// {p in J(L) : p below x}.
inline Ideal encode(const CompactLattice& cl, const SolutionVector& x) {
  Ideal out;
  for (ElementId p = 0; p < cl.irreducible_count(); ++p) {
    if (precedes(cl.irreducible_solution(p), x)) out.members.push_back(p);
  }
  return out;
}

// All lattice elements, in ideal-enumeration order.
inline std::vector<SolutionVector> enumerate_lattice(const CompactLattice& cl,
                                                     std::size_t cap = kDefaultIdealCap) {
  std::vector<SolutionVector> out;
  for (const Ideal& i : enumerate_ideals(cl.irreducible_poset(), cap)) out.push_back(decode_ideal(cl, i));
  return out;
}

// The lattice L* of left-right ordered k-tuples. A tuple is stored flat as a
// k*r vector, so the product order is again componentwise and the generic
// CompactLattice machinery applies. Irreducible C(i, p) (1-indexed i) has
// id (i-1) * |J(L)| + p.
struct ProductLattice {
  CompactLattice lattice;
  std::size_t k = 0;
  std::size_t base_irreducibles = 0;
  std::size_t chains = 0;

  std::size_t position_of(ElementId id) const { return id / base_irreducibles; }
  ElementId base_of(ElementId id) const { return id % base_irreducibles; }
};

inline SolutionVector flatten(const std::vector<SolutionVector>& tuple) {
  SolutionVector out;
  for (const auto& x : tuple) out.ranks.insert(out.ranks.end(), x.ranks.begin(), x.ranks.end());
  return out;
}

inline std::vector<SolutionVector> unflatten(const SolutionVector& flat, std::size_t k) {
  std::vector<SolutionVector> out(k);
  std::size_t r = k == 0 ? 0 : flat.size() / k;
  for (std::size_t i = 0; i < k; ++i) {
    out[i].ranks.assign(flat.ranks.begin() + static_cast<std::ptrdiff_t>(i * r),
                        flat.ranks.begin() + static_cast<std::ptrdiff_t>((i + 1) * r));
  }
  return out;
}

// C(i, p) is below C(j, q) iff i >= j and p is below q in J(L): a tuple with
// more leading 0_L entries and a smaller irreducible sits lower.
inline ProductLattice build_product_irreducibles(const CompactLattice& cl, std::size_t k) {
  if (k < 1) throw InputError("k must be at least 1");
  const std::size_t m = cl.irreducible_count();
  const Poset& base = cl.irreducible_poset();
  std::vector<Poset::Edge> rel;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& [p, q] : base.hasse_edges()) rel.emplace_back(i * m + p, i * m + q);
    if (i + 1 < k) {
      for (ElementId p = 0; p < m; ++p) rel.emplace_back((i + 1) * m + p, i * m + p);
    }
  }
  std::vector<SolutionVector> sols;
  sols.reserve(k * m);
  for (std::size_t i = 0; i < k; ++i) {
    for (ElementId p = 0; p < m; ++p) {
      std::vector<SolutionVector> tuple(k, cl.bottom());
      for (std::size_t j = i; j < k; ++j) tuple[j] = cl.irreducible_solution(p);
      sols.push_back(flatten(tuple));
    }
  }
  std::vector<SolutionVector> bottom(k, cl.bottom());
  ProductLattice out;
  out.lattice = CompactLattice(Poset(k * m, rel), std::move(sols), flatten(bottom));
  out.k = k;
  out.base_irreducibles = m;
  out.chains = cl.chain_count();
  return out;
}

inline LrTuple decode_tuple(const ProductLattice& pl, const Ideal& i) {
  return LrTuple{unflatten(decode_ideal(pl.lattice, i), pl.k)};
}

inline Ideal encode_tuple(const ProductLattice& pl, const LrTuple& t) {
  if (t.size() != pl.k) throw InputError("tuple length does not match k");
  return encode(pl.lattice, flatten(t.solutions));
}

}  // namespace divlat
