#pragma once

// Stable matchings on complete bipartite preferences as a distributive
// lattice: deferred acceptance, the chain decomposition by A-side preference
// lists, the rotation poset, and the oracles for disjoint matchings.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "divlat/disjoint.hpp"
#include "divlat/diverse.hpp"
#include "divlat/error.hpp"
#include "divlat/lattice.hpp"

namespace divlat::matching {

using Agent = std::size_t;

// 0-indexed preferences, most preferred first.
class PreferenceProfile {
 public:
  PreferenceProfile() = default;

  PreferenceProfile(std::vector<std::vector<Agent>> a_prefs, std::vector<std::vector<Agent>> b_prefs)
      : n_(a_prefs.size()), a_prefs_(std::move(a_prefs)), b_prefs_(std::move(b_prefs)) {
    if (n_ == 0) throw InputError("preference profile needs n >= 1");
    if (b_prefs_.size() != n_) throw InputError("A and B sides differ in size");
    a_rank_ = ranks_of(a_prefs_, "A");
    b_rank_ = ranks_of(b_prefs_, "B");
  }

  std::size_t size() const { return n_; }
  const std::vector<Agent>& a_prefs(Agent a) const { return a_prefs_.at(a); }
  const std::vector<Agent>& b_prefs(Agent b) const { return b_prefs_.at(b); }
  // Position of b on a's list, and of a on b's list.
  std::size_t a_rank(Agent a, Agent b) const { return a_rank_[a][b]; }
  std::size_t b_rank(Agent b, Agent a) const { return b_rank_[b][a]; }

 private:
  std::vector<std::vector<std::size_t>> ranks_of(const std::vector<std::vector<Agent>>& prefs,
                                                 const char* side) const {
    std::vector<std::vector<std::size_t>> rank(n_, std::vector<std::size_t>(n_, n_));
    for (Agent x = 0; x < n_; ++x) {
      if (prefs[x].size() != n_) {
        throw InputError(std::string(side) + "-side row " + std::to_string(x + 1) + " has " +
                         std::to_string(prefs[x].size()) + " entries, expected " + std::to_string(n_));
      }
      for (std::size_t j = 0; j < n_; ++j) {
        Agent y = prefs[x][j];
        if (y >= n_ || rank[x][y] != n_) {
          throw InputError(std::string(side) + "-side row " + std::to_string(x + 1) +
                           " is not a permutation of 1.." + std::to_string(n_));
        }
        rank[x][y] = j;
      }
    }
    return rank;
  }

  std::size_t n_ = 0;
  std::vector<std::vector<Agent>> a_prefs_;
  std::vector<std::vector<Agent>> b_prefs_;
  std::vector<std::vector<std::size_t>> a_rank_;
  std::vector<std::vector<std::size_t>> b_rank_;
};

// Preference text format: `n`, then n A-side rows and n B-side rows, 1-indexed.
// '#' starts a comment.
inline PreferenceProfile parse_profile(std::istream& in) {
  std::vector<std::vector<long long>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long long> row;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception&) {
        throw InputError("preference line " + std::to_string(line_no) + ": '" + tok + "' is not an integer");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("preference input is empty");
  if (rows[0].size() != 1 || rows[0][0] < 1) throw InputError("first line must hold n >= 1");
  const auto n = static_cast<std::size_t>(rows[0][0]);
  if (rows.size() != 2 * n + 1) {
    throw InputError("expected " + std::to_string(2 * n) + " preference rows, got " +
                     std::to_string(rows.size() - 1));
  }
  auto convert = [&](std::size_t first) {
    std::vector<std::vector<Agent>> side(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (long long v : rows[first + i]) {
        if (v < 1 || static_cast<std::size_t>(v) > n) {
          throw InputError("preference entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
        }
        side[i].push_back(static_cast<Agent>(v - 1));
      }
    }
    return side;
  };
  return PreferenceProfile(convert(1), convert(1 + n));
}

// Matchings are SolutionVectors: ranks[a] is the position of a's partner on
// a's list. Ground element (a, a_prefs[a][j]) has id a * n + j.
inline std::vector<Agent> partners(const PreferenceProfile& p, const SolutionVector& x) {
  std::vector<Agent> out(p.size());
  for (Agent a = 0; a < p.size(); ++a) out[a] = p.a_prefs(a)[x[a]];
  return out;
}

inline SolutionVector from_partners(const PreferenceProfile& p, const std::vector<Agent>& partner) {
  SolutionVector x(std::vector<std::size_t>(p.size()));
  for (Agent a = 0; a < p.size(); ++a) x.ranks[a] = p.a_rank(a, partner[a]);
  return x;
}

inline bool is_perfect(const PreferenceProfile& p, const SolutionVector& x) {
  if (x.size() != p.size()) return false;
  std::vector<std::uint8_t> used(p.size(), 0);
  for (Agent a = 0; a < p.size(); ++a) {
    if (x[a] >= p.size()) return false;
    Agent b = p.a_prefs(a)[x[a]];
    if (used[b]) return false;
    used[b] = 1;
  }
  return true;
}

// Perfect and without a blocking pair.
inline bool is_stable(const PreferenceProfile& p, const SolutionVector& x) {
  if (!is_perfect(p, x)) return false;
  const std::size_t n = p.size();
  std::vector<Agent> b_partner(n);
  for (Agent a = 0; a < n; ++a) b_partner[p.a_prefs(a)[x[a]]] = a;
  for (Agent a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < x[a]; ++j) {
      Agent b = p.a_prefs(a)[j];
      if (p.b_rank(b, a) < p.b_rank(b, b_partner[b])) return false;
    }
  }
  return true;
}

enum class Side { kA, kB };

inline SolutionVector gale_shapley(const PreferenceProfile& p, Side proposing) {
  const std::size_t n = p.size();
  const bool a_side = proposing == Side::kA;
  auto prop_list = [&](Agent x) -> const std::vector<Agent>& { return a_side ? p.a_prefs(x) : p.b_prefs(x); };
  auto recv_rank = [&](Agent y, Agent x) { return a_side ? p.b_rank(y, x) : p.a_rank(y, x); };
  std::vector<std::size_t> next(n, 0);
  std::vector<std::ptrdiff_t> held(n, -1);
  std::vector<Agent> free;
  for (Agent x = n; x-- > 0;) free.push_back(x);
  while (!free.empty()) {
    Agent x = free.back();
    free.pop_back();
    Agent y = prop_list(x)[next[x]++];
    if (held[y] < 0) {
      held[y] = static_cast<std::ptrdiff_t>(x);
    } else if (recv_rank(y, x) < recv_rank(y, static_cast<Agent>(held[y]))) {
      free.push_back(static_cast<Agent>(held[y]));
      held[y] = static_cast<std::ptrdiff_t>(x);
    } else {
      free.push_back(x);
    }
  }
  std::vector<Agent> a_partner(n);
  for (Agent y = 0; y < n; ++y) {
    Agent x = static_cast<Agent>(held[y]);
    if (a_side) {
      a_partner[x] = y;
    } else {
      a_partner[y] = x;
    }
  }
  return from_partners(p, a_partner);
}

// Chain a lists a's n edges in a's preference order.
inline ChainDecomposition chain_decomposition(const PreferenceProfile& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<ElementId>> chains(n);
  for (Agent a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < n; ++j) chains[a].push_back(a * n + j);
  }
  return ChainDecomposition(n * n, std::move(chains));
}

inline std::pair<SolutionVector, SolutionVector> join_meet_matchings(const PreferenceProfile& p,
                                                                     const SolutionVector& x,
                                                                     const SolutionVector& y) {
  SolutionVector j = join(x, y);
  SolutionVector m = meet(x, y);
  if (!is_stable(p, j) || !is_stable(p, m)) throw ContractError("join or meet of stable matchings is unstable");
  return {std::move(j), std::move(m)};
}

struct Rotation {
  std::vector<std::pair<Agent, Agent>> pairs;  // (a_i, b_i); eliminating gives a_i the partner b_{i+1}
};

struct RotationPoset {
  std::vector<Rotation> rotations;
  Poset precedence;
  SolutionVector base_matching;  // A-optimal
  CompactLattice lattice;        // irreducible p = base with the down-closure of rotation p eliminated
};

namespace detail {

// Rotations exposed in a matching other than the B-optimal one. For every a
// not yet at its B-optimal partner, s(a) is the first b after a's partner
// who prefers a to her own partner, and next(a) is that b's partner.
inline std::vector<Rotation> exposed_rotations(const PreferenceProfile& p, const std::vector<Agent>& a_partner,
                                               const std::vector<Agent>& b_optimal) {
  const std::size_t n = p.size();
  std::vector<Agent> b_partner(n);
  for (Agent a = 0; a < n; ++a) b_partner[a_partner[a]] = a;
  std::vector<std::ptrdiff_t> next(n, -1);
  std::vector<Agent> s(n);
  for (Agent a = 0; a < n; ++a) {
    if (a_partner[a] == b_optimal[a]) continue;
    for (std::size_t j = p.a_rank(a, a_partner[a]) + 1; j < n; ++j) {
      Agent b = p.a_prefs(a)[j];
      if (p.b_rank(b, a) < p.b_rank(b, b_partner[b])) {
        s[a] = b;
        next[a] = static_cast<std::ptrdiff_t>(b_partner[b]);
        break;
      }
    }
    if (next[a] < 0) throw ContractError("agent below its B-optimal partner has no successor");
  }
  std::vector<Rotation> out;
  std::vector<int> state(n, 0);  // 0 unseen, 1 on current walk, 2 done
  for (Agent start = 0; start < n; ++start) {
    if (next[start] < 0 || state[start] != 0) continue;
    std::vector<Agent> walk;
    Agent a = start;
    while (next[a] >= 0 && state[a] == 0) {
      state[a] = 1;
      walk.push_back(a);
      a = static_cast<Agent>(next[a]);
    }
    if (next[a] >= 0 && state[a] == 1) {
      auto it = std::find(walk.begin(), walk.end(), a);
      Rotation r;
      for (; it != walk.end(); ++it) r.pairs.emplace_back(*it, a_partner[*it]);
      // Start each rotation at its smallest agent.
      auto smallest = std::min_element(r.pairs.begin(), r.pairs.end());
      std::rotate(r.pairs.begin(), smallest, r.pairs.end());
      out.push_back(std::move(r));
    }
    for (Agent w : walk) state[w] = 2;
  }
  if (out.empty()) throw ContractError("non-B-optimal matching exposes no rotation");
  std::sort(out.begin(), out.end(), [](const Rotation& x, const Rotation& y) { return x.pairs < y.pairs; });
  return out;
}

inline void eliminate(std::vector<Agent>& a_partner, const Rotation& r) {
  const std::size_t len = r.pairs.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (a_partner[r.pairs[i].first] != r.pairs[i].second) {
      throw ContractError("rotation is not exposed in the matching it is applied to");
    }
  }
  for (std::size_t i = 0; i < len; ++i) a_partner[r.pairs[i].first] = r.pairs[(i + 1) % len].second;
}

}  // namespace detail

inline SolutionVector decode_matching(const PreferenceProfile& p, const RotationPoset& rp, const Ideal& i) {
  if (!is_ideal(rp.precedence, i)) throw ContractError("decode_matching: input is not an ideal");
  std::vector<Agent> a_partner = partners(p, rp.base_matching);
  // Rotation ids follow elimination order along one maximal chain, which
  // is a linear extension of the precedence order.
  for (ElementId r : i.members) detail::eliminate(a_partner, rp.rotations[r]);
  SolutionVector x = from_partners(p, a_partner);
  if (!is_stable(p, x)) throw ContractError("decoded matching is unstable");
  return x;
}

// Rotations are found along one maximal chain from the A-optimal to the
// B-optimal matching; every rotation appears on every maximal chain exactly
// once. Precedence: the rotation that gives a_i the partner b_i precedes the
// rotation containing (a_i, b_i); and for every b strictly between b_i and
// b_{i+1} on a_i's list, the rotation moving b from below a_i to above a_i
// precedes it.
inline RotationPoset build_rotation_poset(const PreferenceProfile& p) {
  const std::size_t n = p.size();
  RotationPoset rp;
  rp.base_matching = gale_shapley(p, Side::kA);
  const std::vector<Agent> b_optimal = partners(p, gale_shapley(p, Side::kB));
  std::vector<Agent> current = partners(p, rp.base_matching);
  while (current != b_optimal) {
    auto exposed = detail::exposed_rotations(p, current, b_optimal);
    detail::eliminate(current, exposed.front());
    rp.rotations.push_back(std::move(exposed.front()));
  }

  // creator[a][b]: rotation after which a holds b.
  std::vector<std::vector<std::ptrdiff_t>> creator(n, std::vector<std::ptrdiff_t>(n, -1));
  // Per b, the moves (rotation, old a, new a).
  struct Move {
    std::size_t rotation;
    Agent from;
    Agent to;
  };
  std::vector<std::vector<Move>> moves(n);
  for (std::size_t r = 0; r < rp.rotations.size(); ++r) {
    const auto& pr = rp.rotations[r].pairs;
    for (std::size_t i = 0; i < pr.size(); ++i) {
      const auto& [a_next, b_next] = pr[(i + 1) % pr.size()];
      creator[pr[i].first][b_next] = static_cast<std::ptrdiff_t>(r);
      moves[b_next].push_back({r, a_next, pr[i].first});
    }
  }
  std::vector<Poset::Edge> rel;
  for (std::size_t r = 0; r < rp.rotations.size(); ++r) {
    const auto& pr = rp.rotations[r].pairs;
    for (std::size_t i = 0; i < pr.size(); ++i) {
      auto [a, b] = pr[i];
      Agent b_next = pr[(i + 1) % pr.size()].second;
      if (creator[a][b] >= 0) rel.emplace_back(static_cast<std::size_t>(creator[a][b]), r);
      for (std::size_t j = p.a_rank(a, b) + 1; j < p.a_rank(a, b_next); ++j) {
        Agent w = p.a_prefs(a)[j];
        for (const Move& mv : moves[w]) {
          if (p.b_rank(w, mv.to) < p.b_rank(w, a) && p.b_rank(w, a) < p.b_rank(w, mv.from)) {
            rel.emplace_back(mv.rotation, r);
          }
        }
      }
    }
  }
  rp.precedence = Poset(rp.rotations.size(), rel);

  std::vector<SolutionVector> irreducible;
  for (ElementId r = 0; r < rp.rotations.size(); ++r) {
    ElementSet below;
    for (ElementId q = 0; q < rp.rotations.size(); ++q) {
      if (rp.precedence.leq(q, r)) below.push_back(q);
    }
    irreducible.push_back(decode_matching(p, rp, Ideal(below)));
  }
  rp.lattice = CompactLattice(rp.precedence, std::move(irreducible), rp.base_matching);
  return rp;
}

inline DiverseResult diverse_stable_matchings(const PreferenceProfile& p, std::size_t k, const Measure& m,
                                              SolverChoice choice) {
  RotationPoset rp = build_rotation_poset(p);
  return solve_diverse(rp.lattice, chain_decomposition(p), k, m, choice);
}

// Least stable matching Y above X with Y(a) != X(a) for every a, by deferred
// acceptance with a proposing from just past X(a) and b accepting only
// agents she prefers to her partner in X.
inline std::optional<SolutionVector> next_disjoint_matching(const PreferenceProfile& p, const SolutionVector& x) {
  if (!is_stable(p, x)) throw InputError("next_disjoint_matching: input matching is not stable");
  const std::size_t n = p.size();
  const std::vector<Agent> x_partner = partners(p, x);
  std::vector<Agent> x_b_partner(n);
  for (Agent a = 0; a < n; ++a) x_b_partner[x_partner[a]] = a;
  std::vector<std::size_t> next(n);
  for (Agent a = 0; a < n; ++a) next[a] = x[a] + 1;
  std::vector<std::ptrdiff_t> held(n, -1);
  std::vector<Agent> free;
  for (Agent a = n; a-- > 0;) free.push_back(a);
  while (!free.empty()) {
    Agent a = free.back();
    free.pop_back();
    bool placed = false;
    while (!placed && next[a] < n) {
      Agent b = p.a_prefs(a)[next[a]++];
      if (p.b_rank(b, a) >= p.b_rank(b, x_b_partner[b])) continue;
      if (held[b] < 0) {
        held[b] = static_cast<std::ptrdiff_t>(a);
        placed = true;
      } else if (p.b_rank(b, a) < p.b_rank(b, static_cast<Agent>(held[b]))) {
        free.push_back(static_cast<Agent>(held[b]));
        held[b] = static_cast<std::ptrdiff_t>(a);
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  std::vector<Agent> a_partner(n);
  for (Agent b = 0; b < n; ++b) a_partner[static_cast<Agent>(held[b])] = b;
  SolutionVector y = from_partners(p, a_partner);
  if (!is_stable(p, y)) throw ContractError("disjoint successor matching is unstable");
  return y;
}

inline DisjointOracles matching_oracles(const PreferenceProfile& p) {
  DisjointOracles o;
  o.o_min = [&p] { return gale_shapley(p, Side::kA); };
  o.o_max = [&p] { return gale_shapley(p, Side::kB); };
  o.o_next_disjoint = [&p](const SolutionVector& x) { return next_disjoint_matching(p, x); };
  return o;
}

}  // namespace divlat::matching
