#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "demograph/category.hpp"
#include "demograph/graph.hpp"
#include "demograph/types.hpp"

namespace demograph {

enum class Role : std::uint8_t { Unknown = 0, Seed = 1, Validation = 2 };

/// Seed / validation / unknown role per node, with the known category for
/// seed and validation nodes.
class NodePartition {
public:
    NodePartition() = default;
    explicit NodePartition(NodeIndex n) : roles_(n, Role::Unknown), labels_(n, -1) {}

    NodeIndex node_count() const { return static_cast<NodeIndex>(roles_.size()); }
    Role role(NodeIndex u) const { return roles_[u]; }
    int label(NodeIndex u) const { return labels_[u]; } ///< -1 when unknown
    bool is_seed(NodeIndex u) const { return roles_[u] == Role::Seed; }
    bool is_validation(NodeIndex u) const { return roles_[u] == Role::Validation; }

    void set_seed(NodeIndex u, int category);
    void set_validation(NodeIndex u, int category);

    NodeIndex seed_count() const { return seed_count_; }
    NodeIndex validation_count() const { return validation_count_; }

    std::vector<NodeIndex> seeds() const;
    std::vector<NodeIndex> validation_nodes() const;

private:
    std::vector<Role> roles_;
    std::vector<std::int32_t> labels_;
    NodeIndex seed_count_ = 0;
    NodeIndex validation_count_ = 0;
};

enum class LabelMode { Age, Category };

struct LabeledNode {
    std::string id;
    double value; // age in years, or category index, per LabelMode
};

/// Reads `node_id<TAB>value` lines (# comments, blank lines skipped).
/// Any run of whitespace is accepted as the separator.
std::vector<LabeledNode> read_label_file(std::istream &in);

/// Label records resolved against a graph's node set.
struct GroundTruth {
    std::vector<std::pair<NodeIndex, int>> labeled; ///< (node, category), ascending by node
    std::vector<double> ages;  ///< per node, NaN when unknown; empty in Category mode
    std::size_t dropped = 0;   ///< records whose id is absent from the graph
};

GroundTruth resolve_labels(const Graph &g, std::span<const LabeledNode> records,
                           const CategoryScheme &scheme, LabelMode mode);

/// Uniformly random seed/validation split of the labeled nodes, reproducible
/// for a fixed rng_seed; |Seed| = round(seed_fraction * |labeled|).
/// Throws DataError when fewer than 2 labeled nodes are given.
NodePartition split_ground_truth(NodeIndex n_nodes,
                                 std::span<const std::pair<NodeIndex, int>> labels,
                                 double seed_fraction, std::uint64_t rng_seed);

/// Carries a partition across a node re-indexing (pruning).
NodePartition remap_partition(const NodePartition &p,
                              std::span<const NodeIndex> old_to_new, NodeIndex new_n);

void write_partition(const Graph &g, const NodePartition &p, std::ostream &out);
NodePartition read_partition(const Graph &g, std::istream &in);

} // namespace demograph
