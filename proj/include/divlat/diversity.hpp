#pragma once

// Diversity measures over tuples of solutions, written both directly and in
// terms of element multiplicities, and the minimization-form objectives that
// the SFM solvers consume.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divlat/error.hpp"
#include "divlat/lattice.hpp"

namespace divlat {

using Value = std::int64_t;

// counts[e] = number of solutions in the tuple that contain element e.
struct MultiplicityProfile {
  std::vector<std::size_t> counts;

  std::size_t operator[](ElementId e) const { return counts[e]; }
  std::size_t size() const { return counts.size(); }
};

inline MultiplicityProfile multiplicity(const ChainDecomposition& d,
                                        const std::vector<SolutionVector>& tuple) {
  MultiplicityProfile mp{std::vector<std::size_t>(d.ground_size(), 0)};
  for (const auto& x : tuple) {
    for (ElementId e : elements_of(d, x)) ++mp.counts[e];
  }
  return mp;
}

inline MultiplicityProfile multiplicity(const ChainDecomposition& d, const LrTuple& t) {
  return multiplicity(d, t.solutions);
}

inline constexpr Value choose2(Value m) { return m * (m - 1) / 2; }

// Positions (0-indexed, inclusive) of the solutions containing e, if the
// tuple contains e at all. For left-right ordered tuples this range has no
// gaps; `contiguous` reports whether that held.
struct ContainmentInterval {
  std::size_t first = 0;
  std::size_t last = 0;
  bool contiguous = true;
};

inline std::optional<ContainmentInterval> containment_interval(const ChainDecomposition& d,
                                                               const std::vector<SolutionVector>& tuple,
                                                               ElementId e) {
  auto [chain, rank] = d.slot(e);
  std::optional<ContainmentInterval> out;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i][chain] != rank) continue;
    ++hits;
    if (!out) out = ContainmentInterval{i, i, true};
    out->last = i;
  }
  if (out) out->contiguous = (out->last - out->first + 1 == hits);
  return out;
}

// Sum of pairwise Hamming distances |X_i symmetric-difference X_j|.
inline Value d_sum(const std::vector<SolutionVector>& tuple) {
  Value total = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      check_compatible(tuple[i], tuple[j]);
      for (std::size_t l = 0; l < tuple[i].size(); ++l) {
        if (tuple[i][l] != tuple[j][l]) total += 2;
      }
    }
  }
  return total;
}

// sum over e of C(mu_e, 2).
inline Value dhat_sum(const MultiplicityProfile& mp) {
  Value total = 0;
  for (std::size_t c : mp.counts) total += choose2(static_cast<Value>(c));
  return total;
}

inline Value dhat_sum(const ChainDecomposition& d, const std::vector<SolutionVector>& tuple) {
  return dhat_sum(multiplicity(d, tuple));
}

// 2 * (r * C(k, 2) - dhat_sum).
inline Value d_sum_via_multiplicity(const ChainDecomposition& d,
                                    const std::vector<SolutionVector>& tuple) {
  const auto r = static_cast<Value>(d.chain_count());
  const auto k = static_cast<Value>(tuple.size());
  return 2 * (r * choose2(k) - dhat_sum(d, tuple));
}

// |union of the X_i|.
inline Value d_cov(const ChainDecomposition& d, const std::vector<SolutionVector>& tuple) {
  Value covered = 0;
  for (std::size_t c : multiplicity(d, tuple).counts) covered += c >= 1 ? 1 : 0;
  return covered;
}

// Excess multiplicity of shared elements: sum over mu_e >= 2 of (mu_e - 1).
inline Value dhat_cov(const MultiplicityProfile& mp) {
  Value total = 0;
  for (std::size_t c : mp.counts) {
    if (c >= 2) total += static_cast<Value>(c) - 1;
  }
  return total;
}

inline Value dhat_cov(const ChainDecomposition& d, const std::vector<SolutionVector>& tuple) {
  return dhat_cov(multiplicity(d, tuple));
}

// Per-element numeric values for the absolute-difference measure; must be
// strictly increasing along each chain.
class ElementValues {
 public:
  ElementValues() = default;
  ElementValues(const ChainDecomposition& d, std::vector<Value> values) : values_(std::move(values)) {
    if (values_.size() != d.ground_size()) {
      throw ConfigError("element values: expected " + std::to_string(d.ground_size()) +
                        " values, got " + std::to_string(values_.size()));
    }
    for (const auto& ch : d.chains()) {
      for (std::size_t r = 0; r + 1 < ch.size(); ++r) {
        if (values_[ch[r]] >= values_[ch[r + 1]]) {
          throw ConfigError("element values must increase strictly along every chain");
        }
      }
    }
  }

  // Chain rank as value: 0, 1, 2, ... on every chain.
  static ElementValues ranks(const ChainDecomposition& d) {
    std::vector<Value> v(d.ground_size());
    for (ElementId e = 0; e < v.size(); ++e) v[e] = static_cast<Value>(d.slot(e).rank);
    return ElementValues(d, std::move(v));
  }

  Value operator[](ElementId e) const { return values_[e]; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<Value> values_;
};

// sum over i < j and chains l of |value(X_i(l)) - value(X_j(l))|.
inline Value d_abs(const ChainDecomposition& d, const std::vector<SolutionVector>& tuple,
                   const ElementValues& values) {
  if (values.size() != d.ground_size()) throw ConfigError("d_abs needs a value for every element");
  Value total = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      for (std::size_t l = 0; l < d.chain_count(); ++l) {
        total += std::llabs(values[d.element(l, tuple[i][l])] - values[d.element(l, tuple[j][l])]);
      }
    }
  }
  return total;
}

enum class MeasureKind { kSum, kCov, kAbs };

inline std::string_view to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::kSum: return "sum";
    case MeasureKind::kCov: return "cov";
    case MeasureKind::kAbs: return "abs";
  }
  return "?";
}

inline MeasureKind parse_measure(std::string_view s) {
  if (s == "sum") return MeasureKind::kSum;
  if (s == "cov") return MeasureKind::kCov;
  if (s == "abs") return MeasureKind::kAbs;
  throw ConfigError("unknown measure '" + std::string(s) + "' (expected sum, cov or abs)");
}

struct Measure {
  MeasureKind kind = MeasureKind::kSum;
  std::optional<ElementValues> element_values;  // abs only

  static Measure sum() { return {MeasureKind::kSum, std::nullopt}; }
  static Measure cov() { return {MeasureKind::kCov, std::nullopt}; }
  static Measure abs(ElementValues v) { return {MeasureKind::kAbs, std::move(v)}; }

  const ElementValues& values() const {
    if (!element_values) throw ConfigError("abs measure requires element values");
    return *element_values;
  }
};

// The quantity being maximized.
inline Value diversity_value(const Measure& m, const ChainDecomposition& d,
                             const std::vector<SolutionVector>& tuple) {
  switch (m.kind) {
    case MeasureKind::kSum: return d_sum(tuple);
    case MeasureKind::kCov: return d_cov(d, tuple);
    case MeasureKind::kAbs: return d_abs(d, tuple, m.values());
  }
  return 0;
}

// The equivalent minimization objective: dhat_sum, dhat_cov or -d_abs.
inline Value minimization_objective(const Measure& m, const ChainDecomposition& d,
                                    const std::vector<SolutionVector>& tuple) {
  switch (m.kind) {
    case MeasureKind::kSum: return dhat_sum(d, tuple);
    case MeasureKind::kCov: return dhat_cov(d, tuple);
    case MeasureKind::kAbs: return -d_abs(d, tuple, m.values());
  }
  return 0;
}

// Recovers the diversity value from the minimization objective of a k-tuple.
inline Value diversity_from_objective(const Measure& m, const ChainDecomposition& d, std::size_t k,
                                      Value objective) {
  const auto r = static_cast<Value>(d.chain_count());
  const auto kk = static_cast<Value>(k);
  switch (m.kind) {
    case MeasureKind::kSum: return 2 * (r * choose2(kk) - objective);
    case MeasureKind::kCov: return kk * r - objective;
    case MeasureKind::kAbs: return -objective;
  }
  return 0;
}

// Valid [lower, upper] range of the minimization objective over k-tuples.
inline std::pair<Value, Value> objective_bounds(const Measure& m, const ChainDecomposition& d,
                                                std::size_t k) {
  const auto r = static_cast<Value>(d.chain_count());
  const auto kk = static_cast<Value>(k);
  switch (m.kind) {
    case MeasureKind::kSum: return {0, r * choose2(kk)};
    case MeasureKind::kCov: return {0, r * (kk - 1)};
    case MeasureKind::kAbs: {
      Value span = 0;
      const auto& v = m.values();
      for (const auto& ch : d.chains()) span += v[ch.back()] - v[ch.front()];
      return {-choose2(kk) * span, 0};
    }
  }
  return {0, 0};
}

// Evaluation oracle on ideals of J(L*).
inline Value objective_oracle(const ProductLattice& pl, const ChainDecomposition& d, const Measure& m,
                              const Ideal& i) {
  return minimization_objective(m, d, decode_tuple(pl, i).solutions);
}

}  // namespace divlat
