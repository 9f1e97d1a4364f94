#include "ocs_toe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "ocs_toe/baselines.hpp"
#include "ocs_toe/errors.hpp"
#include "ocs_toe/io.hpp"
#include "ocs_toe/online.hpp"
#include "ocs_toe/toe.hpp"

namespace ocs_toe {

namespace {

const std::set<std::string>& offline_strategies() {
  static const std::set<std::string> names{"cross", "dual", "uniform-exact", "uniform-heuristic", "helios"};
  return names;
}

const std::set<std::string>& online_strategies() {
  static const std::set<std::string> names{"mdmcf", "mcf"};
  return names;
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

WiringScheme scheme_for(const std::string& strategy) {
  if (strategy == "dual") return WiringScheme::DualLinkUniform;
  if (strategy.starts_with("uniform") || strategy == "helios") return WiringScheme::Uniform;
  return WiringScheme::CrossWiring;
}

PhysicalTopology wiring_for(const std::string& strategy, std::size_t p, Count k) {
  const WiringScheme scheme = scheme_for(strategy);
  return build_wiring(scheme, p, k, scheme == WiringScheme::DualLinkUniform ? 2 : 1);
}

bool exact_strategy(const std::string& strategy) {
  return strategy == "cross" || strategy == "dual" || is_online_strategy(strategy);
}

OcsConfiguration solve_offline(const std::string& strategy, const LogicalTopology& c, const PhysicalTopology& phys) {
  if (strategy == "cross") return solve_cross(c, phys);
  if (strategy == "dual") return solve_dual_link(c, phys);
  if (strategy == "uniform-exact") return uniform_exact_small(c, phys).x;
  if (strategy == "uniform-heuristic") return uniform_bvn_heuristic(c, phys);
  if (strategy == "helios") return helios_matching(c, phys);
  throw ValidationError("unknown offline strategy '" + strategy + "'");
}

// Runs one offline solve and fills metrics; guard and validation failures are
// recorded in `status` with the metric columns left empty.
ReportRow offline_row(std::size_t trial, const std::string& strategy, const LogicalTopology& c,
                      std::uint64_t seed) {
  ReportRow row;
  row.trial = trial;
  row.strategy = strategy;
  row.p = c.p;
  row.k_egroup = c.k_egroup;
  row.seed = seed;
  try {
    const PhysicalTopology phys = wiring_for(strategy, c.p, c.k_egroup);
    const auto start = Clock::now();
    const OcsConfiguration x = solve_offline(strategy, c, phys);
    row.solve_ms = elapsed_ms(start);
    const ValidationReport report = validate_configuration(x, phys, c, exact_strategy(strategy));
    if (!report.ok()) {
      row.status = "invalid";
      return row;
    }
    row.ltcr = ltcr(c.c, realized_matrix(x));
  } catch (const SizeGuardError&) {
    row.status = "size-guard";
  } catch (const InfeasibleError&) {
    row.status = "infeasible";
  } catch (const std::invalid_argument&) {
    row.status = "invalid-input";
  }
  return row;
}

Count parse_count_text(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SchemaError(where + ": expected an integer, got '" + s + "'");
  }
}

void parse_fraction(const nlohmann::json& v, Count& num, Count& den) {
  if (v.is_number_integer()) {
    num = v.get<Count>();
    den = 1;
  } else if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw SchemaError("/mutation_fraction: expected \"num/den\"");
    num = parse_count_text(s.substr(0, slash), "/mutation_fraction");
    den = parse_count_text(s.substr(slash + 1), "/mutation_fraction");
  } else {
    throw SchemaError("/mutation_fraction: expected an integer or a \"num/den\" string");
  }
  if (den <= 0 || num < 0 || num > den) throw SchemaError("/mutation_fraction: must lie in [0, 1]");
}

}  // namespace

bool is_known_strategy(const std::string& name) {
  return offline_strategies().contains(name) || online_strategies().contains(name);
}

bool is_online_strategy(const std::string& name) { return online_strategies().contains(name); }

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> allowed{"mode",     "strategies", "scales",           "trials",
                                             "seed",     "workload",   "mutation_fraction", "demands"};
  if (!j.is_object()) throw SchemaError(": expected an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key)) throw SchemaError("/" + key + ": unknown field");
  ExperimentConfig cfg;
  if (j.contains("mode")) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "offline") {
      cfg.mode = ExperimentConfig::Mode::Offline;
    } else if (mode == "sequence") {
      cfg.mode = ExperimentConfig::Mode::Sequence;
    } else {
      throw SchemaError("/mode: expected \"offline\" or \"sequence\"");
    }
  }
  if (!j.contains("strategies") || !j.at("strategies").is_array()) throw SchemaError("/strategies: expected an array");
  for (std::size_t n = 0; n < j.at("strategies").size(); ++n) {
    const auto& s = j.at("strategies")[n];
    if (!s.is_string() || !is_known_strategy(s.get<std::string>()))
      throw SchemaError("/strategies/" + std::to_string(n) + ": unknown strategy");
    if (cfg.mode == ExperimentConfig::Mode::Offline && is_online_strategy(s.get<std::string>()))
      throw SchemaError("/strategies/" + std::to_string(n) + ": online strategy requires sequence mode");
    cfg.strategies.push_back(s.get<std::string>());
  }
  if (j.contains("scales")) {
    if (!j.at("scales").is_array()) throw SchemaError("/scales: expected an array of [p, k_egroup]");
    for (std::size_t n = 0; n < j.at("scales").size(); ++n) {
      const auto& s = j.at("scales")[n];
      if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() || !s[1].is_number_unsigned())
        throw SchemaError("/scales/" + std::to_string(n) + ": expected [p, k_egroup]");
      cfg.scales.push_back({s[0].get<std::size_t>(), s[1].get<Count>()});
    }
  }
  if (j.contains("trials")) {
    if (!j.at("trials").is_number_unsigned()) throw SchemaError("/trials: expected a nonnegative integer");
    cfg.trials = j.at("trials").get<std::size_t>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw SchemaError("/seed: expected an unsigned 64-bit integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("workload")) {
    const std::string w = j.at("workload").get<std::string>();
    if (w == "heavy") {
      cfg.workload = WorkloadMode::Heavy;
    } else if (w == "sparse") {
      cfg.workload = WorkloadMode::Sparse;
    } else {
      throw SchemaError("/workload: expected \"heavy\" or \"sparse\"");
    }
  }
  if (j.contains("mutation_fraction")) parse_fraction(j.at("mutation_fraction"), cfg.mutation_num, cfg.mutation_den);
  if (j.contains("demands")) {
    if (!j.at("demands").is_array()) throw SchemaError("/demands: expected an array");
    for (std::size_t n = 0; n < j.at("demands").size(); ++n)
      cfg.demands.push_back(io::logical_from_json(j.at("demands")[n], "/demands/" + std::to_string(n)));
    if (!cfg.scales.empty()) throw SchemaError("/demands: cannot be combined with /scales");
    if (cfg.mode != ExperimentConfig::Mode::Offline) throw SchemaError("/demands: only valid in offline mode");
  }
  return cfg;
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads) {
  ExperimentReport report;
  if (config.strategies.empty()) return report;

  if (config.mode == ExperimentConfig::Mode::Offline) {
    struct Job {
      std::size_t trial;
      std::uint64_t seed;
      LogicalTopology demand;
    };
    std::vector<Job> jobs;
    if (!config.demands.empty()) {
      for (std::size_t t = 0; t < config.demands.size(); ++t) jobs.push_back({t, 0, config.demands[t]});
    } else {
      for (const Scale& scale : config.scales) {
        for (std::size_t t = 0; t < config.trials; ++t) {
          WorkloadSpec spec;
          spec.p = scale.p;
          spec.k_egroup = scale.k_egroup;
          spec.seed = derive_seed(config.seed, t);
          LogicalTopology c = config.workload == WorkloadMode::Sparse ? gen_sparse_workload(spec)
                                                                      : gen_heavy_workload(spec);
          jobs.push_back({t, spec.seed, std::move(c)});
        }
      }
    }
    std::vector<std::vector<ReportRow>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t n = next++; n < jobs.size(); n = next++) {
        for (const auto& strategy : config.strategies)
          results[n].push_back(offline_row(jobs[n].trial, strategy, jobs[n].demand, jobs[n].seed));
      }
    };
    const unsigned count = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < count; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& rows : results)
      for (auto& row : rows) report.rows.push_back(std::move(row));
    return report;
  }

  // Sequence mode: one sequence of trials + 1 topologies per scale.
  for (const Scale& scale : config.scales) {
    WorkloadSpec spec;
    spec.p = scale.p;
    spec.k_egroup = scale.k_egroup;
    spec.mode = WorkloadMode::Sequence;
    spec.sequence_length = config.trials + 1;
    spec.mutation_num = config.mutation_num;
    spec.mutation_den = config.mutation_den;
    spec.seed = config.seed;
    ExperimentReport part = run_sequence(gen_sequence(spec), config.strategies, config.seed);
    for (auto& row : part.rows) report.rows.push_back(std::move(row));
  }
  return report;
}

ExperimentReport run_sequence(const std::vector<LogicalTopology>& seq, const std::vector<std::string>& strategies,
                              std::uint64_t seed) {
  ExperimentReport report;
  if (seq.empty() || strategies.empty()) return report;
  const LogicalTopology& first = seq.front();
  const PhysicalTopology cross = build_wiring(WiringScheme::CrossWiring, first.p, first.k_egroup, 1);
  std::map<std::string, OcsConfiguration> incumbent;
  for (const auto& strategy : strategies)
    if (is_online_strategy(strategy)) incumbent[strategy] = solve_cross(first, cross);

  for (std::size_t t = 1; t < seq.size(); ++t) {
    if (seq[t].p != first.p || seq[t].k_egroup != first.k_egroup)
      throw DimensionError("sequence element " + std::to_string(t) + " changes p or k_egroup");
    for (const auto& strategy : strategies) {
      if (!is_online_strategy(strategy)) {
        report.rows.push_back(offline_row(t, strategy, seq[t], seed));
        continue;
      }
      ReportRow row;
      row.trial = t;
      row.strategy = strategy;
      row.p = first.p;
      row.k_egroup = first.k_egroup;
      row.seed = seed;
      const OcsConfiguration& u = incumbent.at(strategy);
      try {
        const auto start = Clock::now();
        OcsConfiguration x = min_rewiring_cross(seq[t], u, cross, OnlineOptions{strategy == "mdmcf"});
        row.solve_ms = elapsed_ms(start);
        if (!validate_configuration(x, cross, seq[t], true).ok()) {
          row.status = "invalid";
        } else {
          row.ltcr = ltcr(seq[t].c, realized_matrix(x));
          row.mrar = mrar(u.x, x.x);
          row.rewired = rewiring_cost(u.x, x.x);
          incumbent[strategy] = std::move(x);
        }
      } catch (const std::invalid_argument&) {
        row.status = "invalid-input";
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "trial,strategy,p,k_egroup,ltcr,mrar,rewired,solve_ms,seed,status\n";
  char ms[32];
  for (const auto& r : report.rows) {
    std::snprintf(ms, sizeof ms, "%.3f", r.solve_ms);
    os << r.trial << ',' << r.strategy << ',' << r.p << ',' << r.k_egroup << ','
       << (r.ltcr ? r.ltcr->decimal3() : "") << ',' << (r.mrar ? r.mrar->decimal3() : "") << ','
       << (r.rewired ? std::to_string(*r.rewired) : "") << ',' << ms << ',' << r.seed << ',' << r.status << '\n';
  }
  return os.str();
}

namespace {

// Nearest-rank quantile of a non-empty sorted sample.
double quantile(const std::vector<double>& sorted, double q) {
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

nlohmann::json describe(std::vector<double> values) {
  if (values.empty()) return nullptr;
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (double v : values) sum += v;
  return {{"mean", sum / static_cast<double>(values.size())},
          {"p50", quantile(values, 0.50)},
          {"p95", quantile(values, 0.95)},
          {"n", values.size()}};
}

}  // namespace

nlohmann::json report_summary(const ExperimentReport& report) {
  struct Acc {
    std::size_t rows = 0;
    std::size_t failed = 0;
    std::vector<double> ltcr, mrar, rewired, ms;
  };
  std::map<std::string, Acc> acc;
  for (const auto& r : report.rows) {
    Acc& a = acc[r.strategy];
    ++a.rows;
    if (r.status != "ok") ++a.failed;
    if (r.ltcr) a.ltcr.push_back(r.ltcr->to_double());
    if (r.mrar) a.mrar.push_back(r.mrar->to_double());
    if (r.rewired) a.rewired.push_back(static_cast<double>(*r.rewired));
    if (r.status == "ok") a.ms.push_back(r.solve_ms);
  }
  nlohmann::json out = nlohmann::json::object();
  for (auto& [name, a] : acc) {
    out[name] = {{"rows", a.rows},
                 {"failed", a.failed},
                 {"ltcr", describe(a.ltcr)},
                 {"mrar", describe(a.mrar)},
                 {"rewired", describe(a.rewired)},
                 {"solve_ms", describe(a.ms)}};
  }
  return {{"strategies", out}};
}

unsigned threads_from_env() {
  const char* env = std::getenv("OCS_TOE_THREADS");
  unsigned want = 1;
  if (env != nullptr) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) want = static_cast<unsigned>(v);
  }
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  return std::min(want, hw);
}

}  // namespace ocs_toe
