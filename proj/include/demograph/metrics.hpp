#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "demograph/category.hpp"
#include "demograph/graph.hpp"
#include "demograph/labeling.hpp"
#include "demograph/partition.hpp"

namespace demograph {

/// Seed count in the immediate neighborhood of every node.
std::vector<std::uint32_t> compute_sin(const Graph &g, const NodePartition &p);

/// Hop distance to the nearest seed (0 for seeds themselves) via multi-source
/// BFS; kUnreachable for nodes in seedless components. Throws DataError when
/// the partition has no seeds.
std::vector<std::uint32_t> compute_dts(const Graph &g, const NodePartition &p);

struct NodeMetrics {
    std::vector<std::uint32_t> sin;
    std::vector<std::uint32_t> dts;
    std::vector<std::uint32_t> degree;
};

NodeMetrics compute_node_metrics(const Graph &g, const NodePartition &p);

/// Closed integer range [lo, hi] (hi ignored when open_top).
struct MetricBin {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool open_top = false;

    bool contains(std::int64_t v) const { return v >= lo && (open_top || v <= hi); }
    std::string label() const;
};

/// {0}, {1}, ..., {max_exact}, {max_exact+1}+
std::vector<MetricBin> exact_bins_with_tail(std::int64_t max_exact);
/// [1,2], (2,29], (29,48], (48,66], (66,100]
std::vector<MetricBin> default_degree_bins();
/// Throws ConfigError on overlapping bins.
void validate_bins(std::span<const MetricBin> bins);

struct HitsRow {
    std::string stratum;
    std::uint64_t population = 0;
    std::uint64_t hits = 0;
    double share = 0.0; ///< population / table denominator
    double rate = 0.0;  ///< hits / population
    bool excluded = false; ///< below the population floor (joint table only)
};

/// Stratified hit-rate table over the validation nodes that carry an
/// assignment; `denominator` records which population the shares refer to.
struct HitsTable {
    std::string title;
    std::vector<HitsRow> rows;
    std::uint64_t denominator = 0;
};

HitsTable hits_by_group(const Assignment &a, const NodePartition &p,
                        const CategoryScheme &scheme);

enum class MetricKind { Sin, Dts, Degree };

/// One row per bin. DTS tables exclude unreachable nodes from the bins and
/// report them in an explicit "unreachable" row instead. A covered-values
/// check rejects observed values falling outside every bin.
HitsTable hits_by_metric(const Assignment &a, const NodeMetrics &m, const NodePartition &p,
                         MetricKind kind, std::span<const MetricBin> bins);

/// Degree-bin x DTS-value cells with a population floor: cells under the
/// floor are flagged and skipped when picking the best cell.
struct JointTable {
    HitsTable cells;
    std::optional<std::size_t> best_row;
    std::uint64_t population_floor = 0;
};

JointTable joint_table(const Assignment &a, const NodeMetrics &m, const NodePartition &p,
                       std::span<const MetricBin> degree_bins,
                       std::span<const std::uint32_t> dts_values,
                       std::uint64_t population_floor = 50);

enum class TableFormat { Tsv, Text };

void write_hits_table(const HitsTable &t, std::ostream &out, TableFormat fmt);
void write_node_metrics(const Graph &g, const NodeMetrics &m, std::ostream &out);

} // namespace demograph
