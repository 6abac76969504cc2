#pragma once

#include <vector>

#include "demograph/category.hpp"
#include "demograph/graph.hpp"
#include "demograph/partition.hpp"
#include "demograph/types.hpp"

namespace demograph {

struct PropagationConfig {
    double lambda = 0.5;     ///< reaction/diffusion mix, 0 = memory only, 1 = diffusion only
    int t_end = 30;          ///< iteration count
    bool masked = true;      ///< mean field over informed neighbors only
    bool use_weights = false;

    void validate() const;
};

/// Per-node probability vectors plus the informed wavefront.
struct PropagationState {
    StateTable current;                 ///< n x C, row x = g_{x,t}
    StateTable initial;                 ///< n x C, row x = g_{x,0}
    std::vector<std::uint8_t> informed; ///< 1 once seed information reached the node
    int t = 0;

    NodeIndex node_count() const { return static_cast<NodeIndex>(current.rows()); }
    int category_count() const { return static_cast<int>(current.cols()); }
};

/// Seeds start one-hot at their category, everyone else uniform 1/C;
/// informed = seed set, t = 0.
PropagationState init_state(const Graph &g, const NodePartition &p,
                            const CategoryScheme &scheme);

/// One synchronous update: every new vector reads iteration t-1 values only.
/// g_{x,t} = (1-lambda) g_{x,0} + lambda * normalized mean field over M(x),
/// where M(x) is the informed neighbors when masked, all neighbors otherwise.
/// M(x) empty keeps g_{x,0}. The informed set grows by one hop per step in
/// both modes.
void step(PropagationState &state, const Graph &g, const PropagationConfig &cfg);

/// init_state followed by t_end steps.
PropagationState run(const Graph &g, const NodePartition &p, const CategoryScheme &scheme,
                     const PropagationConfig &cfg);

/// Validation accuracy of the argmax collapse after each iteration;
/// entry 0 is the prior state. Throws DataError when no validation nodes exist.
std::vector<double> convergence_trace(const Graph &g, const NodePartition &p,
                                      const CategoryScheme &scheme,
                                      const PropagationConfig &cfg);

/// Argmax accuracy of a state table over the validation set (lowest index
/// wins ties). Shared by convergence_trace and the evaluation tables.
double validation_accuracy(const StateTable &table, const NodePartition &p);

} // namespace demograph
