#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rigid1d/explore.hpp"
#include "rigid1d/graph.hpp"

namespace rigid1d {

/// Everything that determines an experiment's records. Serialized in full
/// into every report so a report can be re-run from its own first line.
struct ExperimentConfig {
  std::string experiment;  // hitting-time | sparse-core | explore-sweep | cubic | audit-small
  int n = 0;
  double p = 0.0;            // explore-sweep
  double edge_factor = 0.0;  // sparse-core: m = round(edge_factor * n)
  int d = 3;                 // cubic
  int trials = 1;
  std::uint64_t seed = 1;

  int embeddings = 20;                       // hitting-time battery size
  int vertices = 200;                        // explore-sweep samples per trial
  int subsets = 10;                          // explore-sweep V' samples per trial
  double eps = 0.05;
  double sigma_const = 6000.0;
  Ratio z_floor{99, 100};
  double gamma = 10000.0;                    // |V'| = ceil(gamma * ln n)
  std::uint64_t falsifier_samples = 100000;

  // Desk-scale stand-ins for "with high probability".
  double pass_threshold = 0.95;
  double success_threshold = 0.99;
  double core_trial_threshold = 0.90;
  double forbidden_max_fraction = 0.10;

  std::uint64_t reconstruct_nodes = 10'000'000;
  std::size_t oracle_max_edges = 24;
  int exact_cut_limit = 20;
  int regular_restarts = 10000;

  int audit_max_n = 7;
  int audit_sign_max_n = 6;
  int audit_sign_samples = 100;
  int audit_recon_embeddings = 2;
  bool audit_cubic = true;

  bool emit_witnesses = true;
};

// Defaults for one experiment (its desk-scale headline parameters).
ExperimentConfig default_config(const std::string& experiment);
// Throws std::invalid_argument describing the first problem found.
void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  nlohmann::json data;        // reproducible measurements
  double wall_seconds = 0.0;  // side field, excluded from comparisons
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  nlohmann::json summary;
  nlohmann::json side;  // timestamps, host, workers; not reproducible
};

struct RunOptions {
  int workers = 0;  // 0 = hardware concurrency
  std::function<void(const TrialRecord&)> on_trial;  // called from workers, serialized
};

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

ExperimentReport cmd_hitting_time(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport cmd_sparse_core(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport cmd_explore_sweep(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport cmd_cubic(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport cmd_audit_small(const ExperimentConfig& config, const RunOptions& options = {});

// The graph a trial was run on, rebuilt from the config and the trial seed
// (G_tau, G(n,m), G(n,p) or the random regular graph). Not defined for
// audit-small.
Graph trial_graph(const ExperimentConfig& config, std::uint64_t trial_seed);

// Number of isometry classes of injective placements with the same edge
// lengths as f, by trying every sign vector along a BFS spanning tree (first
// tree edge fixed). Reference for small connected graphs only.
std::size_t count_sign_classes(const Graph& g, const std::vector<std::int64_t>& f);

// One line per record: {"type":"config"}, {"type":"trial"}..., {"type":"summary"}.
void write_jsonl(std::ostream& out, const ExperimentReport& report);
ExperimentReport read_jsonl(std::istream& in);
// Header row plus one row per trial of the scalar fields, then a summary row.
void write_csv(std::ostream& out, const ExperimentReport& report);

nlohmann::json trial_to_json(const TrialRecord& record, bool with_side = true);

// Re-validates every certificate and witness stored in the report against
// regenerated trial graphs. Returns the number of objects checked; throws
// std::runtime_error on the first failure.
std::size_t revalidate_report(const ExperimentReport& report);

}  // namespace rigid1d
