#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "demograph/category.hpp"
#include "demograph/graph.hpp"
#include "demograph/labeling.hpp"
#include "demograph/metrics.hpp"
#include "demograph/partition.hpp"
#include "demograph/propagation.hpp"
#include "demograph/synth.hpp"

namespace demograph {

/// Everything one end-to-end run needs. Flag defaults follow the reference
/// operating point: lambda 0.5, 30 iterations, masked mean field, degree
/// prune at 100, 75/25 seed/validation split.
struct RunConfig {
    std::string edges_path;
    std::string labels_path;
    LabelMode label_mode = LabelMode::Age;
    std::string out_dir;
    std::vector<double> scheme_edges{25.0, 35.0, 50.0};
    std::optional<char> delimiter{}; ///< edge list field separator

    double seed_fraction = 0.75;
    std::uint64_t rng_seed = 1;
    std::uint32_t prune_cap = 100; ///< 0 disables the degree prune

    double lambda = 0.5;
    int iterations = 30;
    bool masked = true;
    bool use_weights = false;

    bool pps = false;
    PpsScope pps_scope = PpsScope::All;
    double tau = 0.0;

    TableFormat format = TableFormat::Tsv;
    std::uint64_t population_floor = 50;
    std::vector<std::uint32_t> joint_dts{1, 2, 3};

    void validate() const;
};

/// Graph + partition + ages after ingest, degree prune, split and
/// seedless-component prune, in that order.
struct PipelineInputs {
    Graph graph;
    NodePartition partition;
    std::vector<double> ages; ///< NaN for unlabeled; empty in Category label mode
    CategoryScheme scheme = CategoryScheme::default_scheme();
    std::size_t dropped_labels = 0;   ///< label records absent from the edge list
    NodeIndex nodes_before_prune = 0;
    EdgeIndex edges_before_prune = 0;
};

PipelineInputs prepare_inputs(const RunConfig &cfg);

/// key=value run configuration (# comments); keys mirror the long CLI flags:
/// edges, labels, label_mode, out, scheme, delimiter, seed_fraction,
/// rng_seed, prune_cap, lambda, iterations, masked, use_weights, pps,
/// pps_scope, tau, format, floor. Command-line flags override file entries.
void apply_config_entry(RunConfig &cfg, const std::string &key, const std::string &value);
RunConfig load_config_file(const std::string &path);

struct RunSummary {
    NodeIndex nodes = 0;
    EdgeIndex edges = 0;
    NodeIndex seeds = 0;
    NodeIndex validation = 0;
    double argmax_accuracy = 0.0;   ///< unfiltered argmax over validation
    double emitted_accuracy = 0.0;  ///< accuracy of the emitted assignment, over assigned
    std::uint64_t assigned_validation = 0;
};

/// Full pipeline; writes the artifact directory (probability table,
/// assignments, hits tables, node metrics, graph/partition exports,
/// manifest.json) and returns the headline numbers.
RunSummary cmd_run(const RunConfig &cfg);

struct SweepPoint {
    double value = 0.0;
    double accuracy = 0.0; ///< over assigned validation nodes
    std::uint64_t assigned = 0;
};

/// Re-runs the labeling (and propagation where needed) per value over one
/// shared graph and split; parameter is "lambda", "t_end" or "tau".
std::vector<SweepPoint> cmd_sweep(const RunConfig &cfg, const std::string &parameter,
                                  const std::vector<double> &values);

struct HomophilySummary {
    double regression_r = 0.0;
    double regression_slope = 0.0;
    double mean_abs_log_difference = 0.0;
};

/// Age-assortativity suite over the raw (unpruned) graph: C, R, log
/// difference, gap profile, linked-age regression. shuffle_labels permutes
/// the ages among labeled nodes first (null-model check).
HomophilySummary cmd_homophily(const RunConfig &cfg, bool shuffle_labels);

/// Per-node degree/SIN/DTS table for the prepared (pruned + split) graph.
void cmd_metrics(const RunConfig &cfg);

/// Writes edges.tsv, labels.tsv (the ground-truth subset) and, when
/// client_fraction < 1, clients.tsv plus the client-induced edges_clients.tsv.
void cmd_synth(const SynthConfig &cfg, const std::string &out_dir);

} // namespace demograph
