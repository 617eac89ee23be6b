#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "divlat/cli.hpp"

namespace {

int emit(const divlat::cli::RunResult& r) {
  if (r.exit_code == divlat::cli::kOk) {
    std::cout << r.report;
  } else {
    std::cerr << "divlat: " << r.error << '\n';
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diverse and disjoint solutions over distributive lattices of minimum cuts and stable matchings"};
  app.require_subcommand(1);

  divlat::cli::RunConfig config;
  std::string measure = "sum";
  std::string solver = "auto";
  std::string values;

  const std::pair<const char*, const char*> problems[] = {
      {"mincut", "minimum s-t cuts of a unit-capacity digraph"},
      {"matching", "stable matchings of a complete preference profile"}};
  const std::pair<const char*, const char*> modes[] = {
      {"diverse", "k solutions of maximum diversity"},
      {"disjoint", "largest family of pairwise disjoint solutions"},
      {"enumerate", "every solution"}};
  for (auto [problem, problem_help] : problems) {
    CLI::App* p = app.add_subcommand(problem, problem_help);
    p->require_subcommand(1);
    for (auto [mode, mode_help] : modes) {
      CLI::App* m = p->add_subcommand(mode, mode_help);
      m->add_option("--input,-i", config.input, "instance file")->required();
      m->add_option("--k,-k", config.k, "number of solutions")->check(CLI::PositiveNumber);
      m->add_option("--measure", measure, "sum, cov or abs");
      m->add_option("--solver", solver, "auto, exhaustive or mnp");
      m->add_option("--values", values, "element values for the abs measure");
      m->add_option("--output", config.output, "json or text");
      m->add_option("--seed", config.seed, "random seed");
      m->callback([&config, problem, mode] {
        config.problem = problem;
        config.mode = mode;
      });
    }
  }

  divlat::cli::SelftestConfig st;
  CLI::App* self = app.add_subcommand("selftest", "sampled submodularity checks on one instance");
  self->group("");
  self->add_option("problem", st.problem, "mincut or matching")->required();
  self->add_option("--input,-i", st.input, "instance file")->required();
  self->add_option("--k,-k", st.k, "tuple size")->check(CLI::PositiveNumber);
  self->add_option("--trials", st.trials, "samples per check");
  self->add_option("--seed", st.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : divlat::cli::kMalformedInput;
  }

  if (self->parsed()) return emit(divlat::cli::selftest(st));

  try {
    config.measure = divlat::parse_measure(measure);
    config.solver = divlat::parse_solver(solver);
  } catch (const std::exception& e) {
    std::cerr << "divlat: " << e.what() << '\n';
    return divlat::cli::kMalformedInput;
  }
  if (!values.empty()) config.values = values;
  return emit(divlat::cli::run(config));
}
