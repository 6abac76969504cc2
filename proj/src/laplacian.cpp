#include "demograph/laplacian.hpp"

#include <cmath>

#include "demograph/error.hpp"

namespace demograph {

OperatorMatrices build_operator_matrices(const Graph &g, bool use_weights) {
    const NodeIndex n = g.node_count();
    OperatorMatrices m;
    m.adjacency = Matrix::Zero(n, n);
    m.degree = Matrix::Zero(n, n);
    for (NodeIndex u = 0; u < n; ++u) {
        auto nb = g.neighbors(u);
        auto wt = g.edge_weights(u);
        double d = 0.0;
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const double w = use_weights ? wt[k] : 1.0;
            m.adjacency(u, nb[k]) = w;
            d += w;
        }
        if (d <= 0.0)
            throw DataError("operator matrices need degree > 0 for every node (node " +
                            g.external_id(u) + " is isolated)");
        m.degree(u, u) = d;
    }
    m.laplacian = m.degree - m.adjacency;
    Vector dinv_sqrt = m.degree.diagonal().array().rsqrt();
    m.normalized_laplacian =
        dinv_sqrt.asDiagonal() * m.laplacian * dinv_sqrt.asDiagonal();
    return m;
}

StateTable laplacian_oracle_run(const Graph &g, const NodePartition &p,
                                const CategoryScheme &scheme,
                                const PropagationConfig &cfg) {
    cfg.validate();
    if (cfg.masked)
        throw ConfigError("laplacian oracle covers the unmasked update only");
    const NodeIndex n = g.node_count();
    if (n > 2000)
        throw ConfigError("laplacian oracle is dense; limited to n <= 2000");

    const OperatorMatrices m = build_operator_matrices(g, cfg.use_weights);
    const Matrix op =
        Matrix::Identity(n, n) - m.normalized_laplacian; // D^{-1/2} (D - L) D^{-1/2}

    const StateTable g0 = init_state(g, p, scheme).initial;
    const Vector d_sqrt = m.degree.diagonal().array().sqrt();
    const Vector d_inv_sqrt = m.degree.diagonal().array().rsqrt();

    // u = D^{1/2} g; all category columns advance together (they decouple)
    Matrix u0 = d_sqrt.asDiagonal() * g0;
    Matrix u = u0;
    for (int t = 0; t < cfg.t_end; ++t)
        u = (1.0 - cfg.lambda) * u0 + cfg.lambda * (op * u);
    return d_inv_sqrt.asDiagonal() * u;
}

} // namespace demograph
