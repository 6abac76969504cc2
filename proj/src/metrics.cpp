#include "demograph/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

#include "demograph/error.hpp"

namespace demograph {

std::vector<std::uint32_t> compute_sin(const Graph &g, const NodePartition &p) {
    const NodeIndex n = g.node_count();
    std::vector<std::uint32_t> sin(n, 0);
    for (NodeIndex u = 0; u < n; ++u) {
        std::uint32_t c = 0;
        for (NodeIndex v : g.neighbors(u))
            c += p.is_seed(v) ? 1 : 0;
        sin[u] = c;
    }
    return sin;
}

std::vector<std::uint32_t> compute_dts(const Graph &g, const NodePartition &p) {
    const NodeIndex n = g.node_count();
    if (p.seed_count() == 0)
        throw DataError("distance to seeds needs at least one seed");
    std::vector<std::uint32_t> dist(n, kUnreachable);
    std::deque<NodeIndex> queue;
    for (NodeIndex u = 0; u < n; ++u) {
        if (p.is_seed(u)) {
            dist[u] = 0;
            queue.push_back(u);
        }
    }
    while (!queue.empty()) {
        const NodeIndex u = queue.front();
        queue.pop_front();
        for (NodeIndex v : g.neighbors(u)) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

NodeMetrics compute_node_metrics(const Graph &g, const NodePartition &p) {
    NodeMetrics m;
    m.sin = compute_sin(g, p);
    m.dts = compute_dts(g, p);
    m.degree.resize(g.node_count());
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        m.degree[u] = g.degree(u);
    return m;
}

std::string MetricBin::label() const {
    if (open_top)
        return std::to_string(lo) + "+";
    if (lo == hi)
        return std::to_string(lo);
    return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

std::vector<MetricBin> exact_bins_with_tail(std::int64_t max_exact) {
    std::vector<MetricBin> bins;
    for (std::int64_t v = 0; v <= max_exact; ++v)
        bins.push_back({v, v, false});
    bins.push_back({max_exact + 1, 0, true});
    return bins;
}

std::vector<MetricBin> default_degree_bins() {
    return {{1, 2, false}, {3, 29, false}, {30, 48, false}, {49, 66, false}, {67, 100, false}};
}

void validate_bins(std::span<const MetricBin> bins) {
    if (bins.empty())
        throw ConfigError("empty bin list");
    for (const MetricBin &b : bins)
        if (!b.open_top && b.hi < b.lo)
            throw ConfigError("bin upper end below lower end");
    for (std::size_t i = 0; i < bins.size(); ++i) {
        for (std::size_t j = i + 1; j < bins.size(); ++j) {
            const MetricBin &a = bins[i], &b = bins[j];
            const bool disjoint = (!a.open_top && b.lo > a.hi) || (!b.open_top && a.lo > b.hi);
            if (!disjoint)
                throw ConfigError("overlapping bins " + a.label() + " and " + b.label());
        }
    }
}

namespace {

HitsRow make_row(std::string stratum, std::uint64_t population, std::uint64_t hits,
                 std::uint64_t denominator) {
    HitsRow r;
    r.stratum = std::move(stratum);
    r.population = population;
    r.hits = hits;
    r.share = denominator ? static_cast<double>(population) / static_cast<double>(denominator)
                          : 0.0;
    r.rate = population ? static_cast<double>(hits) / static_cast<double>(population) : 0.0;
    return r;
}

} // namespace

HitsTable hits_by_group(const Assignment &a, const NodePartition &p,
                        const CategoryScheme &scheme) {
    if (p.validation_count() == 0)
        throw DataError("hit tables need a validation set");
    const int C = scheme.category_count();
    std::vector<std::uint64_t> pop(C, 0), hit(C, 0);
    std::uint64_t total = 0, total_hits = 0;
    for (NodeIndex u = 0; u < p.node_count(); ++u) {
        if (!p.is_validation(u) || a.category[u] < 0)
            continue;
        const int truth = p.label(u);
        ++pop[truth];
        ++total;
        if (a.category[u] == truth) {
            ++hit[truth];
            ++total_hits;
        }
    }
    HitsTable t;
    t.title = "hits by age group";
    t.denominator = total;
    for (int c = 0; c < C; ++c)
        t.rows.push_back(make_row(scheme.label(c), pop[c], hit[c], total));
    t.rows.push_back(make_row("overall", total, total_hits, total));
    return t;
}

HitsTable hits_by_metric(const Assignment &a, const NodeMetrics &m, const NodePartition &p,
                         MetricKind kind, std::span<const MetricBin> bins) {
    validate_bins(bins);
    if (p.validation_count() == 0)
        throw DataError("hit tables need a validation set");
    const std::vector<std::uint32_t> &values = kind == MetricKind::Sin   ? m.sin
                                               : kind == MetricKind::Dts ? m.dts
                                                                         : m.degree;
    std::vector<std::uint64_t> pop(bins.size(), 0), hit(bins.size(), 0);
    std::uint64_t unreachable_pop = 0, unreachable_hit = 0;
    std::uint64_t total = 0, total_hits = 0;
    for (NodeIndex u = 0; u < p.node_count(); ++u) {
        if (!p.is_validation(u) || a.category[u] < 0)
            continue;
        ++total;
        const bool correct = a.category[u] == p.label(u);
        total_hits += correct ? 1 : 0;
        if (kind == MetricKind::Dts && m.dts[u] == kUnreachable) {
            ++unreachable_pop;
            unreachable_hit += correct ? 1 : 0;
            continue;
        }
        const auto v = static_cast<std::int64_t>(values[u]);
        bool found = false;
        for (std::size_t b = 0; b < bins.size(); ++b) {
            if (bins[b].contains(v)) {
                ++pop[b];
                hit[b] += correct ? 1 : 0;
                found = true;
                break;
            }
        }
        if (!found)
            throw DataError("metric value " + std::to_string(v) +
                            " not covered by any bin");
    }
    HitsTable t;
    t.title = kind == MetricKind::Sin   ? "hits by seeds-in-neighborhood"
              : kind == MetricKind::Dts ? "hits by distance-to-seeds"
                                        : "hits by degree";
    t.denominator = total;
    for (std::size_t b = 0; b < bins.size(); ++b)
        t.rows.push_back(make_row(bins[b].label(), pop[b], hit[b], total));
    if (kind == MetricKind::Dts && unreachable_pop > 0)
        t.rows.push_back(make_row("unreachable", unreachable_pop, unreachable_hit, total));
    t.rows.push_back(make_row("overall", total, total_hits, total));
    return t;
}

JointTable joint_table(const Assignment &a, const NodeMetrics &m, const NodePartition &p,
                       std::span<const MetricBin> degree_bins,
                       std::span<const std::uint32_t> dts_values,
                       std::uint64_t population_floor) {
    validate_bins(degree_bins);
    const std::size_t cells = degree_bins.size() * dts_values.size();
    std::vector<std::uint64_t> pop(cells, 0), hit(cells, 0);
    std::uint64_t total = 0;
    for (NodeIndex u = 0; u < p.node_count(); ++u) {
        if (!p.is_validation(u) || a.category[u] < 0)
            continue;
        ++total;
        if (m.dts[u] == kUnreachable)
            continue;
        std::size_t di = dts_values.size();
        for (std::size_t i = 0; i < dts_values.size(); ++i)
            if (dts_values[i] == m.dts[u])
                di = i;
        if (di == dts_values.size())
            continue; // outside the tabulated distances
        for (std::size_t b = 0; b < degree_bins.size(); ++b) {
            if (degree_bins[b].contains(static_cast<std::int64_t>(m.degree[u]))) {
                const std::size_t cell = b * dts_values.size() + di;
                ++pop[cell];
                hit[cell] += a.category[u] == p.label(u) ? 1 : 0;
                break;
            }
        }
    }
    JointTable jt;
    jt.population_floor = population_floor;
    jt.cells.title = "hits by degree x distance-to-seeds";
    jt.cells.denominator = total;
    for (std::size_t b = 0; b < degree_bins.size(); ++b) {
        for (std::size_t i = 0; i < dts_values.size(); ++i) {
            const std::size_t cell = b * dts_values.size() + i;
            HitsRow row = make_row("deg " + degree_bins[b].label() + " dts " +
                                       std::to_string(dts_values[i]),
                                   pop[cell], hit[cell], total);
            row.excluded = pop[cell] < population_floor;
            if (!row.excluded &&
                (!jt.best_row || row.rate > jt.cells.rows[*jt.best_row].rate))
                jt.best_row = jt.cells.rows.size();
            jt.cells.rows.push_back(std::move(row));
        }
    }
    return jt;
}

namespace {
std::string fmt_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}
} // namespace

void write_hits_table(const HitsTable &t, std::ostream &out, TableFormat fmt) {
    if (fmt == TableFormat::Tsv) {
        out << "stratum\tpopulation\tshare\thits\thit_rate\n";
        for (const HitsRow &r : t.rows)
            out << r.stratum << '\t' << r.population << '\t' << fmt_rate(r.share) << '\t'
                << r.hits << '\t' << fmt_rate(r.rate) << (r.excluded ? "\t(below floor)" : "")
                << '\n';
        return;
    }
    out << t.title << " (denominator " << t.denominator << ")\n";
    std::size_t w = 8;
    for (const HitsRow &r : t.rows)
        w = std::max(w, r.stratum.size());
    char line[256];
    std::snprintf(line, sizeof(line), "%-*s %12s %8s %12s %8s\n", static_cast<int>(w),
                  "stratum", "population", "share", "hits", "rate");
    out << line;
    for (const HitsRow &r : t.rows) {
        std::snprintf(line, sizeof(line), "%-*s %12llu %8.4f %12llu %8.4f%s\n",
                      static_cast<int>(w), r.stratum.c_str(),
                      static_cast<unsigned long long>(r.population), r.share,
                      static_cast<unsigned long long>(r.hits), r.rate,
                      r.excluded ? "  (below floor)" : "");
        out << line;
    }
}

void write_node_metrics(const Graph &g, const NodeMetrics &m, std::ostream &out) {
    out << "node_id\tdegree\tsin\tdts\n";
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        out << g.external_id(u) << '\t' << m.degree[u] << '\t' << m.sin[u] << '\t';
        if (m.dts[u] == kUnreachable)
            out << "unreachable";
        else
            out << m.dts[u];
        out << '\n';
    }
}

} // namespace demograph
