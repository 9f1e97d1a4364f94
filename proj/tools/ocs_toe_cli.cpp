// ocs-toe: workload generation, offline/online solving, validation and
// benchmark reports.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocs_toe/baselines.hpp"
#include "ocs_toe/errors.hpp"
#include "ocs_toe/experiment.hpp"
#include "ocs_toe/io.hpp"
#include "ocs_toe/metrics.hpp"
#include "ocs_toe/model.hpp"
#include "ocs_toe/online.hpp"
#include "ocs_toe/toe.hpp"
#include "ocs_toe/workload.hpp"

using namespace ocs_toe;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kInfeasible = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    io::write_file(out, text);
  }
}

std::pair<std::size_t, Count> parse_scale(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--scale expects p,k");
  try {
    return {std::stoul(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--scale expects two integers p,k");
  }
}

void parse_fraction(const std::string& s, Count& num, Count& den) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      num = std::stoll(s);
      den = 1;
    } else {
      num = std::stoll(s.substr(0, slash));
      den = std::stoll(s.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw UsageError("--mutation expects num/den");
  }
  if (den <= 0 || num < 0 || num > den) throw UsageError("--mutation must lie in [0, 1]");
}

PhysicalTopology wiring_for(const std::string& strategy, const LogicalTopology& lt) {
  if (strategy == "cross" || strategy == "mdmcf" || strategy == "mcf")
    return build_wiring(WiringScheme::CrossWiring, lt.p, lt.k_egroup, 1);
  if (strategy == "dual") return build_wiring(WiringScheme::DualLinkUniform, lt.p, lt.k_egroup, 2);
  if (strategy == "uniform" || strategy == "uniform-exact" || strategy == "uniform-heuristic" || strategy == "helios")
    return build_wiring(WiringScheme::Uniform, lt.p, lt.k_egroup, 1);
  throw UsageError("unknown scheme '" + strategy + "'");
}

void print_report(const ValidationReport& r) {
  for (const auto& v : r.violations) std::cerr << violation_name(v.kind) << ": " << v.detail << "\n";
}

// gen ------------------------------------------------------------------------

struct GenArgs {
  std::string scale = "4,2";
  std::uint64_t seed = 0;
  std::string mode = "heavy";
  std::size_t length = 2;
  std::string mutation = "1/4";
  std::string out;
};

int run_gen(const GenArgs& a) {
  WorkloadSpec spec;
  std::tie(spec.p, spec.k_egroup) = parse_scale(a.scale);
  spec.seed = a.seed;
  if (a.mode == "heavy") {
    emit(a.out, io::canonical(io::to_json(gen_heavy_workload(spec))));
  } else if (a.mode == "sparse") {
    emit(a.out, io::canonical(io::to_json(gen_sparse_workload(spec))));
  } else if (a.mode == "sequence") {
    spec.mode = WorkloadMode::Sequence;
    spec.sequence_length = a.length;
    parse_fraction(a.mutation, spec.mutation_num, spec.mutation_den);
    emit(a.out, io::canonical(io::sequence_to_json(gen_sequence(spec))));
  } else {
    throw UsageError("--mode must be heavy, sparse or sequence");
  }
  return kOk;
}

// solve ----------------------------------------------------------------------

struct SolveArgs {
  std::string scheme = "cross";
  std::string logical;
  std::string prev;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const LogicalTopology lt = io::logical_from_json(io::read_file(a.logical));
  const ValidationReport input = validate_logical(lt);
  if (!input.ok()) {
    print_report(input);
    return kInvalid;
  }
  const PhysicalTopology phys = wiring_for(a.scheme, lt);
  std::optional<OcsConfiguration> prev;
  if (!a.prev.empty()) prev = io::config_from_json(io::read_file(a.prev), lt.p, phys.num_ocs());

  OcsConfiguration x;
  bool exact = true;
  if (a.scheme == "cross") {
    x = solve_cross(lt, phys, prev);
  } else if (a.scheme == "mdmcf" || a.scheme == "mcf") {
    if (!prev) throw UsageError("--scheme " + a.scheme + " needs --prev");
    x = min_rewiring_cross(lt, *prev, phys, OnlineOptions{a.scheme == "mdmcf"});
  } else if (a.scheme == "dual") {
    x = solve_dual_link(lt, phys);
  } else if (a.scheme == "uniform-exact") {
    x = uniform_exact_small(lt, phys).x;
    exact = false;
  } else if (a.scheme == "uniform-heuristic" || a.scheme == "uniform") {
    x = uniform_bvn_heuristic(lt, phys);
    exact = false;
  } else if (a.scheme == "helios") {
    x = helios_matching(lt, phys);
    exact = false;
  } else {
    throw UsageError("unknown scheme '" + a.scheme + "'");
  }
  const ValidationReport check = validate_configuration(x, phys, lt, exact);
  if (!check.ok()) {
    print_report(check);
    return kInvalid;
  }
  emit(a.out, io::canonical(io::to_json(x)));
  std::cerr << "ltcr " << ltcr(lt.c, realized_matrix(x)).decimal3();
  if (prev) std::cerr << " mrar " << mrar(prev->x, x.x).decimal3() << " rewired " << rewiring_cost(prev->x, x.x);
  std::cerr << "\n";
  return kOk;
}

// online ---------------------------------------------------------------------

struct OnlineArgs {
  std::string scheme = "cross";
  std::string sequence;
  std::vector<std::string> strategies{"mdmcf"};
  std::string format = "csv";
  std::string out;
};

int run_online(const OnlineArgs& a) {
  if (a.scheme != "cross") throw UsageError("online solving requires --scheme cross");
  for (const auto& s : a.strategies)
    if (!is_known_strategy(s)) throw UsageError("unknown strategy '" + s + "'");
  const auto seq = io::sequence_from_json(io::read_file(a.sequence));
  for (std::size_t t = 0; t < seq.size(); ++t) {
    const ValidationReport r = validate_logical(seq[t]);
    if (!r.ok()) {
      std::cerr << "sequence element " << t << ":\n";
      print_report(r);
      return kInvalid;
    }
  }
  const ExperimentReport report = run_sequence(seq, a.strategies);
  emit(a.out, a.format == "json" ? report_summary(report).dump(2) + "\n" : report_csv(report));
  return kOk;
}

// validate -------------------------------------------------------------------

struct ValidateArgs {
  std::string logical;
  std::string config;
  std::string scheme = "cross";
  bool exact = true;
};

int run_validate(const ValidateArgs& a) {
  const LogicalTopology lt = io::logical_from_json(io::read_file(a.logical));
  ValidationReport r = validate_logical(lt);
  if (r.ok() && !a.config.empty()) {
    const PhysicalTopology phys = wiring_for(a.scheme, lt);
    const OcsConfiguration x = io::config_from_json(io::read_file(a.config), lt.p, phys.num_ocs());
    r = validate_configuration(x, phys, lt, a.exact);
    if (r.ok()) std::cout << "ltcr " << ltcr(lt.c, realized_matrix(x)).decimal3() << "\n";
  }
  if (!r.ok()) {
    print_report(r);
    return kInvalid;
  }
  std::cout << "ok\n";
  return kOk;
}

// bench ----------------------------------------------------------------------

struct BenchArgs {
  std::string config;
  std::string format = "csv";
  std::string out;
  std::string summary;
  std::optional<std::uint64_t> seed;
};

int run_bench(const BenchArgs& a) {
  ExperimentConfig cfg = experiment_config_from_json(io::read_file(a.config));
  if (a.seed) cfg.seed = *a.seed;
  const ExperimentReport report = run_experiment(cfg, threads_from_env());
  emit(a.out, a.format == "json" ? report_summary(report).dump(2) + "\n" : report_csv(report));
  if (!a.summary.empty()) io::write_file(a.summary, report_summary(report).dump(2) + "\n");
  return kOk;
}

// oracle ---------------------------------------------------------------------

struct OracleArgs {
  std::string logical;
  std::string out;
};

// Exact Uniform Wiring optimum next to the Cross Wiring result.
int run_oracle(const OracleArgs& a) {
  const LogicalTopology lt = io::logical_from_json(io::read_file(a.logical));
  const ValidationReport input = validate_logical(lt);
  if (!input.ok()) {
    print_report(input);
    return kInvalid;
  }
  const PhysicalTopology uniform = build_wiring(WiringScheme::Uniform, lt.p, lt.k_egroup, 1);
  const PhysicalTopology cross = build_wiring(WiringScheme::CrossWiring, lt.p, lt.k_egroup, 1);
  const UniformExactResult best = uniform_exact_small(lt, uniform);
  const OcsConfiguration cx = solve_cross(lt, cross);
  const Rational u = ltcr(lt.c, realized_matrix(best.x));
  const Rational c = ltcr(lt.c, realized_matrix(cx));
  const nlohmann::json j{{"demand", lt.c.total()},
                         {"uniform_exact", {{"realized", best.best_realized}, {"ltcr", u.str()}}},
                         {"cross", {{"realized", realized_matrix(cx).total()}, {"ltcr", c.str()}}}};
  emit(a.out, io::canonical(j));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology engineering for OCS-based clusters"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a logical topology or a sequence");
  g->add_option("--scale", gen.scale, "p,k_egroup");
  g->add_option("--seed", gen.seed);
  g->add_option("--mode", gen.mode, "heavy|sparse|sequence");
  g->add_option("--length", gen.length, "sequence length");
  g->add_option("--mutation", gen.mutation, "fraction of matchings replaced per step, num/den");
  g->add_option("--out", gen.out);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "compute an OCS configuration for a logical topology");
  s->add_option("--scheme", solve.scheme, "cross|dual|uniform-exact|uniform-heuristic|helios|mdmcf|mcf");
  s->add_option("--logical", solve.logical)->required();
  s->add_option("--prev", solve.prev, "incumbent configuration");
  s->add_option("--out", solve.out);

  OnlineArgs online;
  auto* o = app.add_subcommand("online", "thread an incumbent through a topology sequence");
  o->add_option("--scheme", online.scheme);
  o->add_option("--sequence", online.sequence)->required();
  o->add_option("--strategy", online.strategies, "mdmcf|mcf|offline strategy; repeatable");
  o->add_option("--format", online.format)->check(CLI::IsMember({"csv", "json"}));
  o->add_option("--out", online.out);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "check a logical topology and optionally a configuration");
  v->add_option("--logical", validate.logical)->required();
  v->add_option("--config", validate.config);
  v->add_option("--scheme", validate.scheme);
  v->add_flag("!--partial", validate.exact, "accept partial realization");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "run an experiment config");
  b->add_option("--config", bench.config)->required();
  b->add_option("--seed", bench.seed, "override the config seed");
  b->add_option("--format", bench.format)->check(CLI::IsMember({"csv", "json"}));
  b->add_option("--out", bench.out);
  b->add_option("--summary", bench.summary, "also write the JSON summary here");

  OracleArgs oracle;
  auto* q = app.add_subcommand("oracle", "exact small-scale Uniform Wiring optimum vs Cross Wiring");
  q->add_option("--logical", oracle.logical)->required();
  q->add_option("--out", oracle.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*s) return run_solve(solve);
    if (*o) return run_online(online);
    if (*v) return run_validate(validate);
    if (*b) return run_bench(bench);
    if (*q) return run_oracle(oracle);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kInvalid;
  } catch (const DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
