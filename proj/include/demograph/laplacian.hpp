#pragma once

#include "demograph/propagation.hpp"
#include "demograph/types.hpp"

namespace demograph {

/// Dense operator set for the global (matrix) form of the propagation:
/// A, D, L = D - A and the normalized Laplacian D^{-1/2} L D^{-1/2}.
/// Small-graph oracle machinery only; the production path never builds these.
struct OperatorMatrices {
    Matrix adjacency;
    Matrix degree;
    Matrix laplacian;
    Matrix normalized_laplacian;
};

/// Throws DataError on degree-0 nodes (D must be invertible). With
/// use_weights, A_ij = w_ij and D holds weighted degrees.
OperatorMatrices build_operator_matrices(const Graph &g, bool use_weights);

/// Matrix-form reference run. Each category column evolves independently
/// under u_t = (1-lambda) u_0 + lambda (I - calL) u_{t-1} in the scaled
/// variable u = D^{1/2} g, which is the exact global form of the local
/// update. Restricted to unmasked mode and n <= 2000 (dense matrices).
StateTable laplacian_oracle_run(const Graph &g, const NodePartition &p,
                                const CategoryScheme &scheme,
                                const PropagationConfig &cfg);

} // namespace demograph
