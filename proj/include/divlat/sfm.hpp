#pragma once

// Submodular function minimization over the ideals of a poset: an exhaustive
// baseline and Wolfe's minimum-norm-point algorithm run on a penalized
// extension of the objective to all subsets.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divlat/diversity.hpp"
#include "divlat/error.hpp"
#include "divlat/poset.hpp"

namespace divlat {

struct SubmodularObjective {
  Poset host;
  std::function<Value(const Ideal&)> evaluate;
  Value lower_bound = 0;
  Value upper_bound = 0;
};

// g(S) = f(dcl(S)) + M * (|dcl(S)| - |S|) on arbitrary subsets S of the host.
// With M > 2 * (upper - lower) the penalty dominates the only way f o dcl can
// violate submodularity (dcl(S & T) strictly inside dcl(S) & dcl(T)), and
// g(dcl(S)) <= g(S), so some minimizer is an ideal.
class PenalizedObjective {
 public:
  explicit PenalizedObjective(const SubmodularObjective& base)
      : base_(&base), penalty_(2 * (base.upper_bound - base.lower_bound) + 1) {
    if (base.upper_bound < base.lower_bound) throw InputError("objective bounds are inverted");
  }

  const SubmodularObjective& base() const { return *base_; }
  Value penalty() const { return penalty_; }
  std::size_t ground_size() const { return base_->host.size(); }

  Value operator()(const ElementSet& s) const {
    Ideal closed = down_closure(base_->host, s);
    return base_->evaluate(closed) +
           penalty_ * static_cast<Value>(closed.size() - normalize(s).size());
  }

 private:
  const SubmodularObjective* base_;
  Value penalty_;
};

enum class SolverChoice { kAuto, kExhaustive, kMnp };

inline SolverChoice parse_solver(std::string_view s) {
  if (s == "auto") return SolverChoice::kAuto;
  if (s == "exhaustive") return SolverChoice::kExhaustive;
  if (s == "mnp") return SolverChoice::kMnp;
  throw ConfigError("unknown solver '" + std::string(s) + "' (expected auto, exhaustive or mnp)");
}

struct SfmResult {
  Ideal minimizer;
  Value value = 0;
  std::string solver;
  std::size_t evaluations = 0;
};

namespace detail {

// Among equal values prefer fewer members, then the lexicographically
// smallest member list. For a submodular f the minimizers are closed under
// intersection, so this selects the inclusion-minimal minimizer.
inline bool better_minimizer(Value va, const ElementSet& a, Value vb, const ElementSet& b) {
  if (va != vb) return va < vb;
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline ElementSet mask_to_set(const std::vector<std::uint8_t>& mask) {
  ElementSet s;
  for (ElementId e = 0; e < mask.size(); ++e) {
    if (mask[e]) s.push_back(e);
  }
  return s;
}

}  // namespace detail

inline SfmResult minimize_exhaustive(const SubmodularObjective& obj, std::size_t cap = kDefaultIdealCap) {
  if (count_ideals(obj.host, cap) > cap) {
    throw ResourceError("exhaustive SFM: more than " + std::to_string(cap) + " ideals");
  }
  SfmResult best;
  best.solver = "exhaustive";
  bool have = false;
  for_each_ideal(obj.host, [&](const std::vector<std::uint8_t>& mask) {
    Ideal i;
    i.members = detail::mask_to_set(mask);
    Value v = obj.evaluate(i);
    ++best.evaluations;
    if (!have || detail::better_minimizer(v, i.members, best.value, best.minimizer.members)) {
      best.minimizer = std::move(i);
      best.value = v;
      have = true;
    }
    return true;
  });
  return best;
}

struct MnpOptions {
  double tolerance = 1e-9;
  std::size_t max_major_iterations = 20000;
};

namespace detail {

// Improves an ideal by single-element moves (add a minimal element of the
// complement, drop a maximal member): first strictly, then toward fewer
// members at equal value.
inline std::pair<Ideal, Value> local_descent(const SubmodularObjective& obj, Ideal current, Value value,
                                             std::size_t& evaluations) {
  const Poset& p = obj.host;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::uint8_t> mask = membership_mask(p, current.members);
    for (ElementId e = 0; e < p.size() && !changed; ++e) {
      std::vector<std::uint8_t> next = mask;
      if (mask[e]) {
        bool maximal = std::none_of(p.hasse_successors(e).begin(), p.hasse_successors(e).end(),
                                    [&](ElementId s) { return mask[s] != 0; });
        if (!maximal) continue;
        next[e] = 0;
      } else {
        bool addable = std::all_of(p.hasse_predecessors(e).begin(), p.hasse_predecessors(e).end(),
                                   [&](ElementId q) { return mask[q] != 0; });
        if (!addable) continue;
        next[e] = 1;
      }
      Ideal candidate(mask_to_set(next));
      Value v = obj.evaluate(candidate);
      ++evaluations;
      if (better_minimizer(v, candidate.members, value, current.members)) {
        current = std::move(candidate);
        value = v;
        changed = true;
      }
    }
  }
  return {std::move(current), value};
}

}  // namespace detail

// Wolfe's minimum-norm-point algorithm on the base polytope of the penalized
// objective (normalized so that g(empty) = 0). Linear optimization over the
// base polytope is the greedy algorithm on a sorted permutation; every greedy
// call evaluates a chain of sets, and the best of them is kept. Because the
// objective is integer valued and x(E)^- is a lower bound on min g for any x
// in the base polytope, the search stops as soon as the best set found is
// within 1 of that bound.
inline SfmResult minimize_mnp(const SubmodularObjective& obj, const MnpOptions& options = {}) {
  const std::size_t m = obj.host.size();
  std::size_t evaluations = 0;
  SubmodularObjective counted = obj;
  counted.evaluate = [&](const Ideal& i) {
    ++evaluations;
    return obj.evaluate(i);
  };
  PenalizedObjective g(counted);

  const Value g_empty = g({});
  ElementSet best_set;
  Value best_value = g_empty;

  auto greedy = [&](const Eigen::VectorXd& w) {
    std::vector<ElementId> order(m);
    std::iota(order.begin(), order.end(), ElementId{0});
    std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) { return w[a] < w[b]; });
    Eigen::VectorXd q(m);
    ElementSet prefix;
    Value prev = g_empty;
    for (ElementId e : order) {
      prefix.push_back(e);
      ElementSet sorted = normalize(prefix);
      Value v = g(sorted);
      q[e] = static_cast<double>(v - prev);
      prev = v;
      if (detail::better_minimizer(v, sorted, best_value, best_set)) {
        best_value = v;
        best_set = sorted;
      }
    }
    return q;
  };

  auto certified = [&](const Eigen::VectorXd& x) {
    double lower = 0.0;
    for (std::size_t e = 0; e < m; ++e) lower += std::min(0.0, x[e]);
    return static_cast<double>(best_value - g_empty) < lower + 1.0 - 1e-6;
  };

  bool done = (m == 0);
  if (!done) {
    std::vector<Eigen::VectorXd> corral{greedy(Eigen::VectorXd::Zero(m))};
    std::vector<double> lambda{1.0};
    Eigen::VectorXd x = corral.front();

    auto affine_min = [&](Eigen::VectorXd& alpha) {
      const auto s = static_cast<Eigen::Index>(corral.size());
      Eigen::MatrixXd system = Eigen::MatrixXd::Zero(s + 1, s + 1);
      for (Eigen::Index i = 0; i < s; ++i) {
        for (Eigen::Index j = 0; j < s; ++j) system(i, j) = corral[i].dot(corral[j]);
        system(i, s) = 1.0;
        system(s, i) = 1.0;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
      rhs[s] = 1.0;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
      if (!lu.isInvertible()) return false;
      alpha = lu.solve(rhs).head(s);
      return true;
    };

    for (std::size_t iter = 0; iter < options.max_major_iterations; ++iter) {
      Eigen::VectorXd q = greedy(x);
      if (certified(x)) {
        done = true;
        break;
      }
      const double xx = x.squaredNorm();
      if (xx - x.dot(q) <= options.tolerance * std::max(1.0, xx)) break;
      bool repeated = std::any_of(corral.begin(), corral.end(),
                                  [&](const Eigen::VectorXd& c) { return (c - q).squaredNorm() < 1e-18; });
      if (repeated) break;
      corral.push_back(std::move(q));
      lambda.push_back(0.0);

      while (true) {
        Eigen::VectorXd alpha;
        if (!affine_min(alpha)) {
          // Affinely dependent corral: drop the newest point.
          corral.pop_back();
          lambda.pop_back();
          break;
        }
        const double kEps = 1e-12;
        if ((alpha.array() > kEps).all()) {
          lambda.assign(alpha.data(), alpha.data() + alpha.size());
          break;
        }
        double theta = 1.0;
        for (std::size_t i = 0; i < corral.size(); ++i) {
          if (alpha[static_cast<Eigen::Index>(i)] <= kEps) {
            double denom = lambda[i] - alpha[static_cast<Eigen::Index>(i)];
            if (denom > 0) theta = std::min(theta, lambda[i] / denom);
          }
        }
        std::vector<Eigen::VectorXd> kept;
        std::vector<double> kept_lambda;
        double total = 0.0;
        for (std::size_t i = 0; i < corral.size(); ++i) {
          double l = theta * alpha[static_cast<Eigen::Index>(i)] + (1.0 - theta) * lambda[i];
          if (l > kEps) {
            kept.push_back(corral[i]);
            kept_lambda.push_back(l);
            total += l;
          }
        }
        for (double& l : kept_lambda) l /= total;
        corral = std::move(kept);
        lambda = std::move(kept_lambda);
        if (corral.size() <= 1) break;
      }
      x = Eigen::VectorXd::Zero(m);
      for (std::size_t i = 0; i < corral.size(); ++i) x += lambda[i] * corral[i];
    }
    if (!done) {
      greedy(x);
      done = certified(x);
    }
  }
  if (!done) {
    throw SolverError("minimum-norm-point solver stopped without an optimality certificate",
                      best_value);
  }

  Ideal ideal = down_closure(obj.host, best_set);
  Value value = counted.evaluate(ideal);
  auto [polished, polished_value] = detail::local_descent(counted, std::move(ideal), value, evaluations);
  SfmResult out;
  out.minimizer = std::move(polished);
  out.value = polished_value;
  out.solver = "mnp";
  out.evaluations = evaluations;
  return out;
}

inline constexpr std::size_t kExhaustiveIdealLimit = 4096;

inline SfmResult minimize(const SubmodularObjective& obj, SolverChoice choice) {
  switch (choice) {
    case SolverChoice::kExhaustive: return minimize_exhaustive(obj);
    case SolverChoice::kMnp: return minimize_mnp(obj);
    case SolverChoice::kAuto:
      if (count_ideals(obj.host, kExhaustiveIdealLimit) <= kExhaustiveIdealLimit) {
        return minimize_exhaustive(obj);
      }
      return minimize_mnp(obj);
  }
  return minimize_exhaustive(obj);
}

namespace detail {

inline ElementSet random_subset(std::size_t m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> density(0.0, 1.0);
  std::bernoulli_distribution pick(density(rng));
  ElementSet s;
  for (ElementId e = 0; e < m; ++e) {
    if (pick(rng)) s.push_back(e);
  }
  return s;
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

// Samples pairs of ideals (down-closures of random subsets) and checks
// f(I & J) + f(I | J) <= f(I) + f(J).
inline bool verify_submodular_sample(const SubmodularObjective& obj, std::size_t trials,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t m = obj.host.size();
  for (std::size_t t = 0; t < trials; ++t) {
    Ideal a = down_closure(obj.host, detail::random_subset(m, rng));
    Ideal b = down_closure(obj.host, detail::random_subset(m, rng));
    Ideal lo(detail::set_intersection(a.members, b.members));
    Ideal hi(detail::set_union(a.members, b.members));
    if (obj.evaluate(lo) + obj.evaluate(hi) > obj.evaluate(a) + obj.evaluate(b)) return false;
  }
  return true;
}

// Same check for the penalized objective, over arbitrary subsets.
inline bool verify_submodular_sample(const PenalizedObjective& g, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t m = g.ground_size();
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSet a = detail::random_subset(m, rng);
    ElementSet b = detail::random_subset(m, rng);
    if (g(detail::set_intersection(a, b)) + g(detail::set_union(a, b)) > g(a) + g(b)) return false;
  }
  return true;
}

}  // namespace divlat
