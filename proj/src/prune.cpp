#include "demograph/prune.hpp"

#include <vector>

#include "demograph/error.hpp"

namespace demograph {

PruneResult prune_high_degree(const Graph &g, std::uint32_t cap) {
    if (cap < 1)
        throw ConfigError("prune cap must be >= 1");
    std::vector<bool> keep(g.node_count());
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        keep[u] = g.degree(u) <= cap;
    PruneResult r;
    r.graph = induced_subgraph(g, keep, &r.old_to_new);
    return r;
}

PruneResult prune_seedless_components(const Graph &g, const NodePartition &p) {
    if (p.seed_count() == 0)
        throw DataError("component prune: partition contains no seeds");
    std::vector<bool> keep(g.node_count(), false);
    std::vector<NodeIndex> frontier;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        if (p.is_seed(u) && !keep[u]) {
            keep[u] = true;
            frontier.push_back(u);
            while (!frontier.empty()) {
                const NodeIndex x = frontier.back();
                frontier.pop_back();
                for (NodeIndex y : g.neighbors(x)) {
                    if (!keep[y]) {
                        keep[y] = true;
                        frontier.push_back(y);
                    }
                }
            }
        }
    }
    PruneResult r;
    r.graph = induced_subgraph(g, keep, &r.old_to_new);
    return r;
}

} // namespace demograph
