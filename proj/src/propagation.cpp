#include "demograph/propagation.hpp"

#include <algorithm>
#include <cmath>

#include "demograph/error.hpp"

namespace demograph {

void PropagationConfig::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw ConfigError("lambda must be in [0, 1]");
    if (t_end < 0)
        throw ConfigError("iteration count must be >= 0");
}

PropagationState init_state(const Graph &g, const NodePartition &p,
                            const CategoryScheme &scheme) {
    const NodeIndex n = g.node_count();
    internal_check(p.node_count() == n, "partition/graph size mismatch");
    const int C = scheme.category_count();
    PropagationState s;
    s.initial.setConstant(n, C, 1.0 / static_cast<double>(C));
    s.informed.assign(n, 0);
    for (NodeIndex u = 0; u < n; ++u) {
        if (!p.is_seed(u))
            continue;
        const int a = p.label(u);
        if (a < 0 || a >= C)
            throw DataError("seed label " + std::to_string(a) + " outside [0," +
                            std::to_string(C) + ")");
        s.initial.row(u).setZero();
        s.initial(u, a) = 1.0;
        s.informed[u] = 1;
    }
    s.current = s.initial;
    s.t = 0;
    return s;
}

void step(PropagationState &state, const Graph &g, const PropagationConfig &cfg) {
    cfg.validate();
    const NodeIndex n = g.node_count();
    internal_check(state.node_count() == n, "state/graph size mismatch");
    const int C = state.category_count();
    const double lambda = cfg.lambda;

    std::vector<std::uint8_t> informed_next(state.informed);
    if (lambda == 0.0) {
        // memory fixed point: the update reduces to g_{x,t} = g_{x,0}, exactly
        state.current = state.initial;
        for (NodeIndex x = 0; x < n; ++x) {
            if (informed_next[x])
                continue;
            for (NodeIndex y : g.neighbors(x)) {
                if (state.informed[y]) {
                    informed_next[x] = 1;
                    break;
                }
            }
        }
        state.informed = std::move(informed_next);
        ++state.t;
        return;
    }

    StateTable next(n, C);
    const double *cur = state.current.data();
    const double *ini = state.initial.data();
    double *out = next.data();
    std::vector<double> acc(C);

    for (NodeIndex x = 0; x < n; ++x) {
        std::fill(acc.begin(), acc.end(), 0.0);
        bool any_informed = false;
        bool any_used = false;
        const auto nb = g.neighbors(x);
        const auto wt = g.edge_weights(x);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const NodeIndex y = nb[k];
            const bool informed_y = state.informed[y] != 0;
            any_informed |= informed_y;
            if (cfg.masked && !informed_y)
                continue;
            any_used = true;
            const double w = cfg.use_weights ? wt[k] : 1.0;
            const double *row = cur + static_cast<std::size_t>(y) * C;
            for (int c = 0; c < C; ++c)
                acc[c] += w * row[c];
        }
        double *dst = out + static_cast<std::size_t>(x) * C;
        const double *g0 = ini + static_cast<std::size_t>(x) * C;
        if (!any_used) {
            // empty mean field (masked with no informed neighbor, or isolated)
            std::copy(g0, g0 + C, dst);
        } else {
            // The mean field is renormalized before mixing, so the seed's own
            // category keeps at least the (1-lambda) memory share exactly.
            double mass = 0.0;
            for (int c = 0; c < C; ++c)
                mass += acc[c];
            const double inv = 1.0 / mass;
            for (int c = 0; c < C; ++c) {
                const double v = (1.0 - lambda) * g0[c] + lambda * (acc[c] * inv);
                dst[c] = std::clamp(v, 0.0, 1.0);
            }
        }
        if (!informed_next[x] && any_informed)
            informed_next[x] = 1;
    }
    state.current.swap(next);
    state.informed = std::move(informed_next);
    ++state.t;
}

PropagationState run(const Graph &g, const NodePartition &p, const CategoryScheme &scheme,
                     const PropagationConfig &cfg) {
    cfg.validate();
    PropagationState s = init_state(g, p, scheme);
    for (int t = 0; t < cfg.t_end; ++t)
        step(s, g, cfg);
    return s;
}

double validation_accuracy(const StateTable &table, const NodePartition &p) {
    std::uint64_t hits = 0, total = 0;
    const int C = static_cast<int>(table.cols());
    for (NodeIndex u = 0; u < p.node_count(); ++u) {
        if (!p.is_validation(u))
            continue;
        ++total;
        int best = 0;
        for (int c = 1; c < C; ++c)
            if (table(u, c) > table(u, best))
                best = c;
        if (best == p.label(u))
            ++hits;
    }
    if (total == 0)
        throw DataError("no validation nodes");
    return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<double> convergence_trace(const Graph &g, const NodePartition &p,
                                      const CategoryScheme &scheme,
                                      const PropagationConfig &cfg) {
    cfg.validate();
    if (p.validation_count() == 0)
        throw DataError("convergence trace needs a validation set");
    PropagationState s = init_state(g, p, scheme);
    std::vector<double> trace;
    trace.reserve(cfg.t_end + 1);
    trace.push_back(validation_accuracy(s.current, p));
    for (int t = 0; t < cfg.t_end; ++t) {
        step(s, g, cfg);
        trace.push_back(validation_accuracy(s.current, p));
    }
    return trace;
}

} // namespace demograph
