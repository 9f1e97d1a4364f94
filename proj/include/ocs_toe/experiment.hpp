#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ocs_toe/metrics.hpp"
#include "ocs_toe/model.hpp"
#include "ocs_toe/workload.hpp"

namespace ocs_toe {

// Offline strategies: cross, dual, uniform-exact, uniform-heuristic, helios.
// Online strategies (sequence mode only): mdmcf, mcf.
bool is_known_strategy(const std::string& name);
bool is_online_strategy(const std::string& name);

struct Scale {
  std::size_t p = 0;
  Count k_egroup = 0;
};

struct ExperimentConfig {
  enum class Mode { Offline, Sequence };
  Mode mode = Mode::Offline;
  std::vector<std::string> strategies;
  std::vector<Scale> scales;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  WorkloadMode workload = WorkloadMode::Heavy;
  Count mutation_num = 1;
  Count mutation_den = 4;
  // Explicit offline demands; when present they replace generated workloads
  // and `scales` must be empty.
  std::vector<LogicalTopology> demands;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

struct ReportRow {
  std::size_t trial = 0;
  std::string strategy;
  std::size_t p = 0;
  Count k_egroup = 0;
  std::optional<Rational> ltcr;
  std::optional<Rational> mrar;
  std::optional<Count> rewired;
  double solve_ms = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
};

// Runs every (trial, strategy) pair. Offline trials run on up to `threads`
// workers; rows come back in (scale, trial, strategy) order regardless.
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads = 1);

// Threads one incumbent per online strategy through seq, starting from the
// Cross solution of seq[0]; rows are numbered from 1. Offline strategies are
// solved from scratch at every step.
ExperimentReport run_sequence(const std::vector<LogicalTopology>& seq, const std::vector<std::string>& strategies,
                              std::uint64_t seed = 0);

// Column order: trial,strategy,p,k_egroup,ltcr,mrar,rewired,solve_ms,seed,status
std::string report_csv(const ExperimentReport& report);
// Per-strategy means and p50/p95 quantiles.
nlohmann::json report_summary(const ExperimentReport& report);

// Thread count from OCS_TOE_THREADS (default 1, capped by hardware).
unsigned threads_from_env();

}  // namespace ocs_toe
