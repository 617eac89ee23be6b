#pragma once

// Maximum-diversity k-multisets over any lattice given by a chain
// decomposition and a compact representation: build J(L*), minimize the
// measure's minimization form over its ideals, decode the optimal tuple.

#include <cstddef>
#include <string>
#include <utility>

#include "divlat/diversity.hpp"
#include "divlat/lattice.hpp"
#include "divlat/sfm.hpp"

namespace divlat {

inline SubmodularObjective make_diversity_objective(const ProductLattice& pl, const ChainDecomposition& d,
                                                    const Measure& m) {
  auto [lo, hi] = objective_bounds(m, d, pl.k);
  SubmodularObjective obj;
  obj.host = pl.lattice.irreducible_poset();
  obj.evaluate = [&pl, &d, m](const Ideal& i) { return objective_oracle(pl, d, m, i); };
  obj.lower_bound = lo;
  obj.upper_bound = hi;
  return obj;
}

struct DiverseResult {
  LrTuple solutions;
  Value diversity = 0;
  Value objective = 0;
  std::size_t num_irreducibles = 0;  // |J(L*)|
  std::size_t oracle_calls = 0;
  std::string solver;
};

inline DiverseResult solve_diverse(const CompactLattice& cl, const ChainDecomposition& d, std::size_t k,
                                   const Measure& m, SolverChoice choice) {
  ProductLattice pl = build_product_irreducibles(cl, k);
  SubmodularObjective obj = make_diversity_objective(pl, d, m);
  SfmResult best = minimize(obj, choice);
  DiverseResult out;
  out.solutions = decode_tuple(pl, best.minimizer);
  out.objective = best.value;
  out.diversity = diversity_value(m, d, out.solutions.solutions);
  if (out.diversity != diversity_from_objective(m, d, k, best.value)) {
    throw ContractError("diversity value disagrees with its minimization form");
  }
  out.num_irreducibles = pl.lattice.irreducible_count();
  out.oracle_calls = best.evaluations;
  out.solver = best.solver;
  return out;
}

}  // namespace divlat
