#pragma once

// Batch front end: read an instance, run one mode, serialize a report.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "divlat/disjoint.hpp"
#include "divlat/diverse.hpp"
#include "divlat/error.hpp"
#include "divlat/matching.hpp"
#include "divlat/mincut.hpp"

namespace divlat::cli {

enum ExitCode : int {
  kOk = 0,
  kMalformedInput = 1,
  kInfeasible = 2,
  kResourceGuard = 3,
  kInternalError = 4,
};

struct RunConfig {
  std::string problem;  // mincut | matching
  std::string mode;     // diverse | disjoint | enumerate
  std::size_t k = 2;
  MeasureKind measure = MeasureKind::kSum;
  SolverChoice solver = SolverChoice::kAuto;
  std::string input;
  std::string output = "json";  // json | text
  std::uint64_t seed = 0;
  std::optional<std::string> values;  // abs measure; chain ranks if absent
};

struct RunResult {
  int exit_code = kOk;
  std::string report;  // empty on failure
  std::string error;
};

namespace detail {

using json = nlohmann::ordered_json;

inline void validate(const RunConfig& c) {
  if (c.problem != "mincut" && c.problem != "matching") {
    throw ConfigError("unknown problem '" + c.problem + "' (expected mincut or matching)");
  }
  if (c.mode != "diverse" && c.mode != "disjoint" && c.mode != "enumerate") {
    throw ConfigError("unknown mode '" + c.mode + "' (expected diverse, disjoint or enumerate)");
  }
  if (c.k < 1) throw ConfigError("k must be at least 1");
  if (c.output != "json" && c.output != "text") throw ConfigError("output must be json or text");
  if (c.values && c.measure != MeasureKind::kAbs) throw ConfigError("--values only applies to the abs measure");
}

inline std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  return in;
}

inline std::vector<Value> read_values(const std::string& path) {
  std::ifstream in = open(path);
  std::vector<Value> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("values file: '" + tok + "' is not an integer");
      }
    }
  }
  return out;
}

// What a report needs from either problem.
struct Instance {
  ChainDecomposition chains;
  const CompactLattice* lattice = nullptr;
  DisjointOracles oracles;
  std::function<json(const SolutionVector&)> describe;
  std::function<bool(const SolutionVector&)> feasible;
};

inline std::string pairs_text(const json& elements) {
  std::string out;
  for (const auto& e : elements) {
    if (!out.empty()) out += ' ';
    out += '(' + std::to_string(e[0].get<long long>()) + ',' + std::to_string(e[1].get<long long>());
    if (e.size() > 2) out += '#' + std::to_string(e[2].get<long long>());
    out += ')';
  }
  return out;
}

inline Measure make_measure(const RunConfig& c, const ChainDecomposition& d,
                            const std::function<std::vector<Value>(std::vector<Value>)>& to_ground) {
  switch (c.measure) {
    case MeasureKind::kSum: return Measure::sum();
    case MeasureKind::kCov: return Measure::cov();
    case MeasureKind::kAbs:
      if (!c.values) return Measure::abs(ElementValues::ranks(d));
      return Measure::abs(ElementValues(d, to_ground(read_values(*c.values))));
  }
  return Measure::sum();
}

inline json run_mode(const RunConfig& c, Instance& inst, const Measure& m) {
  std::vector<SolutionVector> solutions;
  std::size_t oracle_calls = 0;
  std::string solver;
  Value diversity = 0;
  if (c.mode == "diverse") {
    DiverseResult r = solve_diverse(*inst.lattice, inst.chains, c.k, m, c.solver);
    solutions = r.solutions.solutions;
    oracle_calls = r.oracle_calls;
    solver = r.solver;
    diversity = r.diversity;
  } else if (c.mode == "disjoint") {
    DisjointResult r = max_disjoint(inst.oracles);
    solutions = std::move(r.solutions);
    oracle_calls = r.oracle_calls;
    solver = "disjoint-chain";
    diversity = diversity_value(m, inst.chains, solutions);
  } else {
    solutions = enumerate_lattice(*inst.lattice);
    std::sort(solutions.begin(), solutions.end());
    solver = "enumerate";
    diversity = diversity_value(m, inst.chains, solutions);
  }
  for (const auto& x : solutions) {
    if (!inst.feasible(x)) throw ContractError("reported solution fails the feasibility check");
  }
  json report;
  report["problem"] = c.problem;
  report["k"] = c.k;
  report["measure"] = std::string(to_string(c.measure));
  report["diversity"] = diversity;
  json sols = json::array();
  for (const auto& x : solutions) sols.push_back(inst.describe(x));
  report["solutions"] = std::move(sols);
  report["stats"] = {{"num_irreducibles", c.mode == "diverse"
                                              ? inst.lattice->irreducible_count() * c.k
                                              : inst.lattice->irreducible_count()},
                     {"oracle_calls", oracle_calls},
                     {"solver", solver}};
  return report;
}

inline std::string render(const RunConfig& c, const json& report) {
  if (c.output == "json") return report.dump(2) + "\n";
  std::ostringstream out;
  out << report["problem"].get<std::string>() << ' ' << c.mode
      << " k=" << report["k"].get<std::size_t>() << " measure=" << report["measure"].get<std::string>()
      << " diversity=" << report["diversity"].get<Value>() << '\n';
  std::size_t i = 0;
  for (const auto& s : report["solutions"]) out << "  [" << ++i << "] " << pairs_text(s) << '\n';
  const auto& st = report["stats"];
  out << "irreducibles=" << st["num_irreducibles"].get<std::size_t>()
      << " oracle_calls=" << st["oracle_calls"].get<std::size_t>() << " solver=" << st["solver"].get<std::string>()
      << '\n';
  return out.str();
}

inline std::string run_mincut(const RunConfig& c) {
  std::ifstream in = open(c.input);
  mincut::FlowNetwork net = mincut::parse_network(in);
  mincut::MinCutInstance mi = mincut::analyze(net);
  std::map<std::pair<mincut::VertexId, mincut::VertexId>, std::size_t> multiplicity;
  for (const auto& arc : net.arcs) ++multiplicity[arc];

  Instance inst;
  inst.chains = mi.chains;
  inst.lattice = &mi.pq.lattice;
  inst.oracles = mincut::mincut_oracles(mi);
  inst.describe = [&](const SolutionVector& x) {
    auto arcs = mincut::cut_arcs(mi, x);
    std::sort(arcs.begin(), arcs.end());
    json out = json::array();
    for (mincut::ArcId a : arcs) {
      auto [u, v] = net.arcs[a];
      json e = json::array({u + 1, v + 1});
      if (multiplicity[net.arcs[a]] > 1) e.push_back(a + 1);
      out.push_back(std::move(e));
    }
    return out;
  };
  inst.feasible = [&](const SolutionVector& x) {
    auto arcs = mincut::cut_arcs(mi, x);
    return arcs.size() == mi.flow.value && mincut::separates(net, arcs);
  };
  // Arcs on no flow path never occur in a minimum cut; their values are
  // replaced so that they sit below the rest of chain 0.
  auto to_ground = [&](std::vector<Value> v) {
    if (v.size() != net.arcs.size()) {
      throw ConfigError("values file has " + std::to_string(v.size()) + " entries for " +
                        std::to_string(net.arcs.size()) + " arcs");
    }
    const auto& chain0 = mi.chains.chain(0);
    const std::size_t idle = chain0.size() - mi.flow.paths[0].size();
    const Value floor = v[chain0[idle]];
    for (std::size_t i = 0; i < idle; ++i) v[chain0[i]] = floor - static_cast<Value>(idle - i);
    return v;
  };
  Measure m = make_measure(c, mi.chains, to_ground);
  return render(c, run_mode(c, inst, m));
}

inline std::string run_matching(const RunConfig& c) {
  std::ifstream in = open(c.input);
  matching::PreferenceProfile p = matching::parse_profile(in);
  matching::RotationPoset rp = matching::build_rotation_poset(p);
  const std::size_t n = p.size();

  Instance inst;
  inst.chains = matching::chain_decomposition(p);
  inst.lattice = &rp.lattice;
  inst.oracles = matching::matching_oracles(p);
  inst.describe = [&](const SolutionVector& x) {
    auto partner = matching::partners(p, x);
    json out = json::array();
    for (matching::Agent a = 0; a < n; ++a) out.push_back(json::array({a + 1, partner[a] + 1}));
    return out;
  };
  inst.feasible = [&](const SolutionVector& x) { return matching::is_stable(p, x); };
  // Values are given as an n x n matrix: row a, column b.
  auto to_ground = [&](std::vector<Value> v) {
    if (v.size() != n * n) {
      throw ConfigError("values file needs an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    }
    std::vector<Value> ground(n * n);
    for (matching::Agent a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < n; ++j) ground[a * n + j] = v[a * n + p.a_prefs(a)[j]];
    }
    return ground;
  };
  Measure m = make_measure(c, inst.chains, to_ground);
  return render(c, run_mode(c, inst, m));
}

}  // namespace detail

inline RunResult run(const RunConfig& c) {
  RunResult out;
  try {
    detail::validate(c);
    out.report = c.problem == "mincut" ? detail::run_mincut(c) : detail::run_matching(c);
    out.exit_code = kOk;
  } catch (const InputError& e) {
    out = {kMalformedInput, "", e.what()};
  } catch (const ConfigError& e) {
    out = {kMalformedInput, "", e.what()};
  } catch (const InfeasibleError& e) {
    out = {kInfeasible, "", e.what()};
  } catch (const ResourceError& e) {
    out = {kResourceGuard, "", e.what()};
  } catch (const SolverError& e) {
    out = {kInternalError, "", e.what()};
  } catch (const ContractError& e) {
    out = {kInternalError, "", e.what()};
  } catch (const std::exception& e) {
    out = {kInternalError, "", e.what()};
  }
  return out;
}

struct SelftestConfig {
  std::string problem;
  std::string input;
  std::size_t k = 2;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
};

// Sampled submodularity checks of every measure's objective on one instance.
inline RunResult selftest(const SelftestConfig& c) {
  RunResult out;
  try {
    RunConfig rc;
    rc.problem = c.problem;
    rc.mode = "diverse";
    rc.k = c.k;
    detail::validate(rc);
    std::ifstream in = detail::open(c.input);
    ChainDecomposition d;
    CompactLattice cl;
    if (c.problem == "mincut") {
      auto mi = mincut::analyze(mincut::parse_network(in));
      d = mi.chains;
      cl = mi.pq.lattice;
    } else {
      auto p = matching::parse_profile(in);
      d = matching::chain_decomposition(p);
      cl = matching::build_rotation_poset(p).lattice;
    }
    ProductLattice pl = build_product_irreducibles(cl, c.k);
    detail::json report;
    report["problem"] = c.problem;
    report["k"] = c.k;
    report["seed"] = c.seed;
    bool all = true;
    for (const Measure& m : {Measure::sum(), Measure::cov(), Measure::abs(ElementValues::ranks(d))}) {
      SubmodularObjective obj = make_diversity_objective(pl, d, m);
      bool ok = verify_submodular_sample(obj, c.trials, c.seed) &&
                verify_submodular_sample(PenalizedObjective(obj), c.trials, c.seed);
      report["submodular"][std::string(to_string(m.kind))] = ok;
      all = all && ok;
    }
    report["ok"] = all;
    out.report = report.dump(2) + "\n";
    out.exit_code = all ? kOk : kInternalError;
  } catch (const InputError& e) {
    out = {kMalformedInput, "", e.what()};
  } catch (const ConfigError& e) {
    out = {kMalformedInput, "", e.what()};
  } catch (const InfeasibleError& e) {
    out = {kInfeasible, "", e.what()};
  } catch (const ResourceError& e) {
    out = {kResourceGuard, "", e.what()};
  } catch (const std::exception& e) {
    out = {kInternalError, "", e.what()};
  }
  return out;
}

}  // namespace divlat::cli
