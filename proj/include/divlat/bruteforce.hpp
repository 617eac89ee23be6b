#pragma once

// Exhaustive reference solvers for small instances. They share no code with
// the lattice machinery beyond the solution encoding.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "divlat/diversity.hpp"
#include "divlat/error.hpp"
#include "divlat/lattice.hpp"
#include "divlat/matching.hpp"
#include "divlat/mincut.hpp"

namespace divlat::bruteforce {

inline constexpr std::size_t kMaxCutVertices = 12;
inline constexpr std::size_t kMaxMatchingSize = 6;
inline constexpr std::size_t kMaxMultisets = 1'000'000;
inline constexpr std::size_t kMaxDisjointFamily = 20;

enum class Source { kMincut, kMatching };

struct EnumeratedSolutionSet {
  std::vector<SolutionVector> solutions;  // sorted, distinct
  Source source = Source::kMincut;
};

// Raw arc sets of all minimum cuts (each sorted), sorted.
inline std::vector<std::vector<mincut::ArcId>> enumerate_min_cut_arcs(const mincut::FlowNetwork& net) {
  net.validate();
  const std::size_t nv = net.vertex_count;
  if (nv > kMaxCutVertices) {
    throw ResourceError("cut enumeration limited to " + std::to_string(kMaxCutVertices) + " vertices");
  }
  std::size_t best = net.arcs.size() + 1;
  std::vector<std::vector<mincut::ArcId>> cuts;
  for (std::uint32_t mask = 0; mask < (1u << nv); ++mask) {
    if (!(mask >> net.source & 1u) || (mask >> net.sink & 1u)) continue;
    std::vector<mincut::ArcId> out;
    for (mincut::ArcId a = 0; a < net.arcs.size(); ++a) {
      auto [u, v] = net.arcs[a];
      if ((mask >> u & 1u) && !(mask >> v & 1u)) out.push_back(a);
    }
    if (out.size() < best) {
      best = out.size();
      cuts.clear();
    }
    if (out.size() == best) cuts.push_back(std::move(out));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Minimum cuts encoded against the instance's chain decomposition.
inline EnumeratedSolutionSet enumerate_min_cuts(const mincut::MinCutInstance& inst) {
  EnumeratedSolutionSet out;
  out.source = Source::kMincut;
  for (const auto& arcs : enumerate_min_cut_arcs(inst.net)) {
    if (!mincut::separates(inst.net, arcs)) throw ContractError("enumerated cut does not separate s from t");
    out.solutions.push_back(from_elements(inst.chains, arcs));
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  return out;
}

inline EnumeratedSolutionSet enumerate_stable_matchings(const matching::PreferenceProfile& p) {
  const std::size_t n = p.size();
  if (n > kMaxMatchingSize) {
    throw ResourceError("matching enumeration limited to n <= " + std::to_string(kMaxMatchingSize));
  }
  EnumeratedSolutionSet out;
  out.source = Source::kMatching;
  std::vector<matching::Agent> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    SolutionVector x = matching::from_partners(p, perm);
    if (matching::is_stable(p, x)) out.solutions.push_back(std::move(x));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.solutions.begin(), out.solutions.end());
  return out;
}

struct BestMultiset {
  std::vector<SolutionVector> multiset;
  Value value = 0;
};

inline std::size_t multiset_count(std::size_t n, std::size_t k, std::size_t cap) {
  // C(n + k - 1, k), saturating above cap.
  if (n == 0) return 0;
  unsigned long long c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - 1 + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::size_t>(c);
}

// Maximum diversity over all k-multisets of `set`; the first maximum in
// lexicographic index order wins.
inline BestMultiset best_diverse_multiset(const ChainDecomposition& d, const std::vector<SolutionVector>& set,
                                          std::size_t k, const Measure& m) {
  if (k < 1) throw InputError("k must be at least 1");
  if (set.empty()) throw InputError("solution set is empty");
  if (multiset_count(set.size(), k, kMaxMultisets) > kMaxMultisets) {
    throw ResourceError("more than " + std::to_string(kMaxMultisets) + " multisets to search");
  }
  std::vector<std::size_t> idx(k, 0);
  BestMultiset best;
  bool have = false;
  std::vector<SolutionVector> tuple(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = set[idx[i]];
    Value v = diversity_value(m, d, tuple);
    if (!have || v > best.value) {
      best.value = v;
      best.multiset = tuple;
      have = true;
    }
    // Next non-decreasing index sequence.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == set.size() - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[pos - 1];
  }
  return best;
}

// Largest pairwise disjoint subfamily, by branch over subsets.
inline std::size_t max_disjoint_bruteforce(const std::vector<SolutionVector>& set) {
  if (set.size() > kMaxDisjointFamily) {
    throw ResourceError("disjoint search limited to " + std::to_string(kMaxDisjointFamily) + " solutions");
  }
  const std::size_t n = set.size();
  std::vector<std::uint32_t> compatible(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && disjoint(set[i], set[j])) compatible[i] |= 1u << j;
    }
  }
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if ((mask >> i & 1u) && (mask & ~(1u << i) & ~compatible[i])) ok = false;
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace divlat::bruteforce
