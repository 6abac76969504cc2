#include "demograph/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "demograph/error.hpp"

namespace demograph {

std::size_t Assignment::assigned_count() const {
    std::size_t c = 0;
    for (std::int32_t v : category)
        c += v >= 0 ? 1 : 0;
    return c;
}

std::vector<std::int64_t> Assignment::histogram(int category_count) const {
    std::vector<std::int64_t> h(category_count, 0);
    for (std::int32_t v : category)
        if (v >= 0)
            ++h[v];
    return h;
}

Assignment collapse_argmax(const StateTable &table) {
    const auto n = static_cast<std::size_t>(table.rows());
    const int C = static_cast<int>(table.cols());
    Assignment a;
    a.category.resize(n);
    a.confidence.resize(n);
    a.source.assign(n, AssignmentSource::Argmax);
    for (std::size_t x = 0; x < n; ++x) {
        int best = 0;
        for (int c = 1; c < C; ++c)
            if (table(x, c) > table(x, best))
                best = c;
        a.category[x] = best;
        a.confidence[x] = table(x, best);
    }
    return a;
}

Assignment filter_by_threshold(Assignment a, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw ConfigError("tau must be in [0, 1]");
    for (std::size_t x = 0; x < a.node_count(); ++x) {
        if (a.category[x] >= 0 && a.confidence[x] < tau) {
            a.category[x] = -1;
            a.source[x] = AssignmentSource::Unassigned;
        }
    }
    return a;
}

std::int64_t QuotaPlan::total() const {
    return std::accumulate(per_category.begin(), per_category.end(), std::int64_t{0});
}

QuotaPlan compute_quotas(std::span<const double> fractions, std::int64_t n) {
    if (n < 0)
        throw ConfigError("quota total must be >= 0");
    double sum = 0.0;
    for (double f : fractions) {
        if (f < 0.0)
            throw ConfigError("negative target fraction");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("target fractions must sum to 1");

    const std::size_t C = fractions.size();
    QuotaPlan plan;
    plan.per_category.resize(C);
    std::vector<double> remainder(C);
    std::int64_t assigned = 0;
    for (std::size_t c = 0; c < C; ++c) {
        const double exact = fractions[c] * static_cast<double>(n);
        plan.per_category[c] = static_cast<std::int64_t>(std::floor(exact));
        remainder[c] = exact - std::floor(exact);
        assigned += plan.per_category[c];
    }
    std::vector<std::size_t> order(C);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return remainder[a] > remainder[b]; // stable: ties go to the lower index
    });
    for (std::size_t k = 0; assigned < n; ++k)
        ++plan.per_category[order[k % C]], ++assigned;
    return plan;
}

Assignment pps_assign(const StateTable &table, const QuotaPlan &quotas) {
    const auto n = static_cast<std::int64_t>(table.rows());
    const int C = static_cast<int>(table.cols());
    if (static_cast<int>(quotas.per_category.size()) != C)
        throw ConfigError("quota plan has wrong category count");
    for (std::int64_t q : quotas.per_category)
        if (q < 0)
            throw ConfigError("negative quota");
    if (quotas.total() != n)
        throw ConfigError("quota total " + std::to_string(quotas.total()) +
                          " != node count " + std::to_string(n));

    struct Tuple {
        double p;
        NodeIndex node;
        std::int32_t cat;
    };
    std::vector<Tuple> tuples;
    tuples.reserve(static_cast<std::size_t>(n) * C);
    for (std::int64_t x = 0; x < n; ++x)
        for (int c = 0; c < C; ++c)
            tuples.push_back({table(x, c), static_cast<NodeIndex>(x), c});
    std::sort(tuples.begin(), tuples.end(), [](const Tuple &a, const Tuple &b) {
        if (a.p != b.p)
            return a.p > b.p;
        if (a.node != b.node)
            return a.node < b.node;
        return a.cat < b.cat;
    });

    Assignment out;
    out.category.assign(n, -1);
    out.confidence.assign(n, 0.0);
    out.source.assign(n, AssignmentSource::Pps);
    std::vector<std::int64_t> filled(C, 0);
    std::int64_t assigned = 0;
    for (const Tuple &t : tuples) {
        if (assigned == n)
            break;
        if (out.category[t.node] >= 0)
            continue;
        if (filled[t.cat] >= quotas.per_category[t.cat])
            continue;
        out.category[t.node] = t.cat;
        out.confidence[t.node] = t.p;
        ++filled[t.cat];
        ++assigned;
    }
    internal_check(assigned == n, "pps left nodes unassigned despite matching quota total");
    return out;
}

std::vector<double> seed_category_fractions(const NodePartition &p, int category_count) {
    std::vector<double> f(category_count, 0.0);
    for (NodeIndex u = 0; u < p.node_count(); ++u)
        if (p.is_seed(u))
            f[p.label(u)] += 1.0;
    if (p.seed_count() == 0)
        throw DataError("quota target distribution needs seeds");
    for (double &v : f)
        v /= static_cast<double>(p.seed_count());
    return f;
}

QuotaPlan decrement_quotas_by_seeds(const QuotaPlan &all, const NodePartition &p) {
    QuotaPlan q = all;
    for (NodeIndex u = 0; u < p.node_count(); ++u)
        if (p.is_seed(u))
            --q.per_category[p.label(u)];
    std::int64_t surplus = 0;
    for (std::int64_t &v : q.per_category)
        if (v < 0) {
            surplus += -v;
            v = 0;
        }
    while (surplus > 0) {
        auto it = std::max_element(q.per_category.begin(), q.per_category.end());
        internal_check(*it > 0, "nonseed quotas exhausted");
        --*it;
        --surplus;
    }
    return q;
}

Assignment pps_assign_scoped(const StateTable &table, const NodePartition &p,
                             const CategoryScheme &scheme, PpsScope scope) {
    const auto n = static_cast<std::int64_t>(table.rows());
    internal_check(p.node_count() == static_cast<NodeIndex>(n),
                   "partition/table size mismatch");
    const QuotaPlan all =
        compute_quotas(seed_category_fractions(p, scheme.category_count()), n);
    if (scope == PpsScope::All)
        return pps_assign(table, all);

    std::vector<NodeIndex> free_nodes;
    for (NodeIndex u = 0; u < p.node_count(); ++u)
        if (!p.is_seed(u))
            free_nodes.push_back(u);
    StateTable sub(free_nodes.size(), table.cols());
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
        sub.row(i) = table.row(free_nodes[i]);
    const Assignment partial = pps_assign(sub, decrement_quotas_by_seeds(all, p));

    Assignment out;
    out.category.assign(n, -1);
    out.confidence.assign(n, 0.0);
    out.source.assign(n, AssignmentSource::Pps);
    for (NodeIndex u = 0; u < p.node_count(); ++u) {
        if (p.is_seed(u)) {
            out.category[u] = p.label(u);
            out.confidence[u] = table(u, p.label(u));
        }
    }
    for (std::size_t i = 0; i < free_nodes.size(); ++i) {
        out.category[free_nodes[i]] = partial.category[i];
        out.confidence[free_nodes[i]] = partial.confidence[i];
    }
    return out;
}

} // namespace demograph
