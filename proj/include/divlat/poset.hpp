#pragma once

// Finite posets over dense element ids 0..m-1, their ideals, and down-closures.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "divlat/error.hpp"

namespace divlat {

using ElementId = std::size_t;

// Sorted, duplicate-free list of element ids. Sets compare by content.
using ElementSet = std::vector<ElementId>;

inline ElementSet normalize(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// A down-closed subset of some host poset. The type itself does not know the
// host; the poset functions below are the ones that establish closure.
struct Ideal {
  ElementSet members;

  Ideal() = default;
  explicit Ideal(ElementSet m) : members(normalize(std::move(m))) {}

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool contains(ElementId e) const {
    return std::binary_search(members.begin(), members.end(), e);
  }

  friend bool operator==(const Ideal&, const Ideal&) = default;
  friend auto operator<=>(const Ideal&, const Ideal&) = default;
};

class Poset {
 public:
  using Edge = std::pair<ElementId, ElementId>;

  Poset() = default;

  // `relations` lists pairs (a, b) meaning a is below b. They need not be a
  // Hasse diagram: the transitive reduction is recomputed. A cycle is an
  // input error because it breaks antisymmetry.
  Poset(std::size_t element_count, const std::vector<Edge>& relations)
      : n_(element_count), leq_(element_count * element_count, 0) {
    std::vector<std::vector<ElementId>> out(n_);
    for (const auto& [a, b] : relations) {
      if (a >= n_ || b >= n_) {
        throw InputError("poset relation (" + std::to_string(a) + ", " +
                         std::to_string(b) + ") references an unknown element");
      }
      if (a != b) out[a].push_back(b);
    }
    // Reachability by DFS from every element.
    std::vector<ElementId> stack;
    for (ElementId root = 0; root < n_; ++root) {
      leq_[root * n_ + root] = 1;
      stack.assign(1, root);
      while (!stack.empty()) {
        ElementId u = stack.back();
        stack.pop_back();
        for (ElementId v : out[u]) {
          if (!leq_[root * n_ + v]) {
            leq_[root * n_ + v] = 1;
            stack.push_back(v);
          }
        }
      }
    }
    for (ElementId a = 0; a < n_; ++a) {
      for (ElementId b = a + 1; b < n_; ++b) {
        if (leq(a, b) && leq(b, a)) {
          throw InputError("poset relations contain a cycle through elements " +
                           std::to_string(a) + " and " + std::to_string(b));
        }
      }
    }
    // a -> b is a cover iff a < b and no c with a < c < b.
    preds_.assign(n_, {});
    succs_.assign(n_, {});
    for (ElementId a = 0; a < n_; ++a) {
      for (ElementId b = 0; b < n_; ++b) {
        if (a == b || !leq(a, b)) continue;
        bool cover = true;
        for (ElementId c = 0; c < n_ && cover; ++c) {
          if (c != a && c != b && leq(a, c) && leq(c, b)) cover = false;
        }
        if (cover) {
          hasse_.emplace_back(a, b);
          succs_[a].push_back(b);
          preds_[b].push_back(a);
        }
      }
    }
  }

  // Antichain of m elements.
  static Poset antichain(std::size_t m) { return Poset(m, {}); }

  // Chain 0 < 1 < ... < m-1.
  static Poset chain(std::size_t m) {
    std::vector<Edge> rel;
    for (ElementId i = 0; i + 1 < m; ++i) rel.emplace_back(i, i + 1);
    return Poset(m, rel);
  }

  std::size_t size() const { return n_; }

  // Reflexive order relation.
  bool leq(ElementId a, ElementId b) const { return leq_[a * n_ + b] != 0; }
  bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }

  const std::vector<Edge>& hasse_edges() const { return hasse_; }
  const std::vector<ElementId>& hasse_predecessors(ElementId e) const { return preds_[e]; }
  const std::vector<ElementId>& hasse_successors(ElementId e) const { return succs_[e]; }

  // Elements in an order compatible with the poset (every element after all
  // of its predecessors); ties broken by id.
  std::vector<ElementId> linear_extension() const {
    std::vector<std::size_t> indeg(n_);
    for (ElementId e = 0; e < n_; ++e) indeg[e] = preds_[e].size();
    std::vector<ElementId> order;
    order.reserve(n_);
    std::vector<ElementId> ready;
    for (ElementId e = 0; e < n_; ++e) {
      if (indeg[e] == 0) ready.push_back(e);
    }
    while (!ready.empty()) {
      auto it = std::min_element(ready.begin(), ready.end());
      ElementId u = *it;
      ready.erase(it);
      order.push_back(u);
      for (ElementId v : succs_[u]) {
        if (--indeg[v] == 0) ready.push_back(v);
      }
    }
    return order;
  }

  void check_ids(const ElementSet& s) const {
    for (ElementId e : s) {
      if (e >= n_) {
        throw InputError("element id " + std::to_string(e) + " is outside the poset of size " +
                         std::to_string(n_));
      }
    }
  }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.n_ == b.n_ && a.leq_ == b.leq_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<Edge> hasse_;
  std::vector<std::vector<ElementId>> preds_;
  std::vector<std::vector<ElementId>> succs_;
};

inline constexpr std::size_t kDefaultIdealCap = 1'000'000;

inline std::vector<std::uint8_t> membership_mask(const Poset& p, const ElementSet& s) {
  std::vector<std::uint8_t> mask(p.size(), 0);
  for (ElementId e : s) mask[e] = 1;
  return mask;
}

inline bool is_ideal(const Poset& p, const ElementSet& s) {
  p.check_ids(s);
  auto mask = membership_mask(p, s);
  for (ElementId u : s) {
    for (ElementId v : p.hasse_predecessors(u)) {
      if (!mask[v]) return false;
    }
  }
  return true;
}

inline bool is_ideal(const Poset& p, const Ideal& i) { return is_ideal(p, i.members); }

inline Ideal down_closure(const Poset& p, const ElementSet& s) {
  p.check_ids(s);
  auto mask = membership_mask(p, s);
  std::vector<ElementId> stack(s.begin(), s.end());
  while (!stack.empty()) {
    ElementId u = stack.back();
    stack.pop_back();
    for (ElementId v : p.hasse_predecessors(u)) {
      if (!mask[v]) {
        mask[v] = 1;
        stack.push_back(v);
      }
    }
  }
  ElementSet out;
  for (ElementId e = 0; e < p.size(); ++e) {
    if (mask[e]) out.push_back(e);
  }
  Ideal ideal;
  ideal.members = std::move(out);
  return ideal;
}

namespace detail {

// Include/exclude recursion along a linear extension. An element may be
// included only when all of its Hasse predecessors are; every leaf is a
// distinct ideal, so the work is proportional to the output.
template <typename Visit>
bool visit_ideals(const Poset& p, const std::vector<ElementId>& order, std::size_t pos,
                  std::vector<std::uint8_t>& mask, Visit& visit) {
  if (pos == order.size()) return visit(mask);
  ElementId e = order[pos];
  if (!visit_ideals(p, order, pos + 1, mask, visit)) return false;
  bool allowed = true;
  for (ElementId q : p.hasse_predecessors(e)) {
    if (!mask[q]) {
      allowed = false;
      break;
    }
  }
  if (allowed) {
    mask[e] = 1;
    bool go_on = visit_ideals(p, order, pos + 1, mask, visit);
    mask[e] = 0;
    if (!go_on) return false;
  }
  return true;
}

}  // namespace detail

// Calls visit(mask) for every ideal; visit returns false to stop early.
// Returns false iff stopped early.
template <typename Visit>
bool for_each_ideal(const Poset& p, Visit&& visit) {
  auto order = p.linear_extension();
  std::vector<std::uint8_t> mask(p.size(), 0);
  return detail::visit_ideals(p, order, 0, mask, visit);
}

// Number of ideals, or cap + 1 if there are more than cap.
inline std::size_t count_ideals(const Poset& p, std::size_t cap) {
  std::size_t count = 0;
  for_each_ideal(p, [&](const std::vector<std::uint8_t>&) { return ++count <= cap; });
  return count;
}

inline std::vector<Ideal> enumerate_ideals(const Poset& p, std::size_t cap = kDefaultIdealCap) {
  std::vector<Ideal> out;
  bool complete = for_each_ideal(p, [&](const std::vector<std::uint8_t>& mask) {
    if (out.size() == cap) return false;
    Ideal ideal;
    for (ElementId e = 0; e < mask.size(); ++e) {
      if (mask[e]) ideal.members.push_back(e);
    }
    out.push_back(std::move(ideal));
    return true;
  });
  if (!complete) {
    throw ResourceError("poset has more than " + std::to_string(cap) + " ideals");
  }
  return out;
}

// The subposet on `keep`; element keep[i] (in sorted order) becomes id i.
inline Poset induced_subposet(const Poset& p, const ElementSet& keep) {
  ElementSet k = normalize(keep);
  p.check_ids(k);
  std::vector<Poset::Edge> rel;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (i != j && p.leq(k[i], k[j])) rel.emplace_back(i, j);
    }
  }
  return Poset(k.size(), rel);
}

}  // namespace divlat
