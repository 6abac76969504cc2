#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "demograph/types.hpp"

namespace demograph {

/// Immutable symmetric sparse graph in CSR form. Neighbor lists are sorted,
/// self-loop free and duplicate free; every edge is stored in both directions
/// with equal weight. External (file-level) node ids map bijectively onto the
/// contiguous internal indices 0..n-1.
class Graph {
public:
    Graph() = default;

    NodeIndex node_count() const { return static_cast<NodeIndex>(ext_ids_.size()); }
    EdgeIndex edge_count() const { return neighbors_.size() / 2; } ///< undirected edges

    std::uint32_t degree(NodeIndex u) const {
        return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
    }
    std::span<const NodeIndex> neighbors(NodeIndex u) const {
        return {neighbors_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }
    std::span<const double> edge_weights(NodeIndex u) const {
        return {weights_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    const std::string &external_id(NodeIndex u) const { return ext_ids_[u]; }
    std::optional<NodeIndex> find_external(std::string_view id) const;

    /// True when every stored weight equals 1.0.
    bool has_uniform_weights() const { return uniform_weights_; }

    /// Full-scan check of the structural invariants (symmetry, sorted lists,
    /// no self-loops, no duplicates). Throws InternalError on violation.
    void validate() const;

private:
    friend class GraphBuilder;
    friend Graph induced_subgraph(const Graph &, const std::vector<bool> &,
                                  std::vector<NodeIndex> *);

    std::vector<EdgeIndex> offsets_{0};
    std::vector<NodeIndex> neighbors_;
    std::vector<double> weights_;
    std::vector<std::string> ext_ids_;
    std::unordered_map<std::string, NodeIndex> ext_index_;
    bool uniform_weights_ = true;

    void rebuild_index();
};

/// Accumulates raw edges, then builds the canonical CSR graph: directed
/// duplicates collapse to one undirected edge (max weight wins), self-loops
/// are dropped, neighbor lists come out sorted.
class GraphBuilder {
public:
    /// Registers both endpoints; duplicate and reversed pairs are fine.
    void add_edge(std::string_view u, std::string_view v, double weight = 1.0);

    /// Registers a node without requiring an incident edge.
    NodeIndex add_node(std::string_view id);

    Graph build();

private:
    NodeIndex intern(std::string_view id);

    struct RawEdge {
        NodeIndex u, v;
        double w;
    };
    std::vector<RawEdge> edges_;
    std::vector<std::string> ext_ids_;
    std::unordered_map<std::string, NodeIndex> ext_index_;
};

struct EdgeListSchema {
    /// Field separator; nullopt means any run of whitespace.
    std::optional<char> delimiter{};
};

/// Parses a line-oriented edge list: `src dst [weight]`, `#` comments, blank
/// lines ignored. Self-loop lines register the node but add no edge.
/// Throws DataError with a line number on malformed input or weight <= 0.
Graph ingest_edge_list(std::istream &in, const EdgeListSchema &schema = {});

/// Deterministic sorted edge list (external ids, tab separated, weight last).
void write_edge_list(const Graph &g, std::ostream &out);

/// Subgraph induced by `keep`; surviving nodes are re-indexed densely while
/// retaining their external ids. Optionally reports old->new (kInvalidNode
/// for removed nodes).
Graph induced_subgraph(const Graph &g, const std::vector<bool> &keep,
                       std::vector<NodeIndex> *old_to_new = nullptr);

} // namespace demograph
