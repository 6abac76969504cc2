#pragma once

#include <vector>

#include "demograph/graph.hpp"
#include "demograph/partition.hpp"

namespace demograph {

struct PruneResult {
    Graph graph;
    std::vector<NodeIndex> old_to_new; ///< kInvalidNode for removed nodes
};

/// Removes every node whose ORIGINAL degree exceeds cap, together with its
/// incident edges. Applied once, not iterated; survivors that end up isolated
/// are kept. cap >= 1.
PruneResult prune_high_degree(const Graph &g, std::uint32_t cap);

/// Keeps exactly the connected components that contain at least one seed.
/// Throws DataError when the partition has no seeds.
PruneResult prune_seedless_components(const Graph &g, const NodePartition &p);

} // namespace demograph
