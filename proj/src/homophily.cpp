#include "demograph/homophily.hpp"

#include <cmath>
#include <cstdio>

#include "demograph/error.hpp"

namespace demograph {

namespace {

bool labeled(std::span<const double> ages, NodeIndex u) {
    return !std::isnan(ages[u]);
}

int age_of(std::span<const double> ages, NodeIndex u) {
    return static_cast<int>(std::llround(ages[u]));
}

struct AgeRange {
    int lo = 0, hi = -1;
};

AgeRange labeled_range(std::span<const double> ages) {
    AgeRange r;
    bool first = true;
    for (std::size_t u = 0; u < ages.size(); ++u) {
        if (std::isnan(ages[u]))
            continue;
        const int a = static_cast<int>(std::llround(ages[u]));
        if (first) {
            r.lo = r.hi = a;
            first = false;
        } else {
            r.lo = std::min(r.lo, a);
            r.hi = std::max(r.hi, a);
        }
    }
    if (first)
        throw DataError("homophily analysis needs labeled node ages");
    return r;
}

} // namespace

AgeMatrix communication_matrix(const Graph &g, std::span<const double> ages) {
    internal_check(ages.size() == g.node_count(), "ages/graph size mismatch");
    const AgeRange range = labeled_range(ages);
    AgeMatrix m;
    m.min_age = range.lo;
    m.values = Matrix::Zero(range.hi - range.lo + 1, range.hi - range.lo + 1);
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        if (!labeled(ages, u))
            continue;
        const int au = age_of(ages, u);
        for (NodeIndex v : g.neighbors(u)) {
            if (v < u || !labeled(ages, v))
                continue; // each undirected labeled edge handled once
            const int av = age_of(ages, v);
            m.values(au - range.lo, av - range.lo) += 1.0;
            m.values(av - range.lo, au - range.lo) += 1.0;
        }
    }
    return m;
}

AgeMatrix null_matrix(std::span<const double> ages, double edge_mass) {
    const AgeRange range = labeled_range(ages);
    const int span = range.hi - range.lo + 1;
    Vector count = Vector::Zero(span);
    double n_labeled = 0.0;
    for (std::size_t u = 0; u < ages.size(); ++u) {
        if (std::isnan(ages[u]))
            continue;
        count[static_cast<int>(std::llround(ages[u])) - range.lo] += 1.0;
        n_labeled += 1.0;
    }
    AgeMatrix m;
    m.min_age = range.lo;
    const Vector share = count / n_labeled;
    m.values = (share * share.transpose()) * edge_mass;
    return m;
}

Matrix log_difference(const AgeMatrix &comm, const AgeMatrix &null, double eps) {
    if (comm.min_age != null.min_age || comm.values.rows() != null.values.rows())
        throw ConfigError("log difference needs matrices over the same age range");
    return ((comm.values.array() + eps).log() - (null.values.array() + eps).log()).matrix();
}

GapProfile gap_profile(const Graph &g, std::span<const double> ages) {
    internal_check(ages.size() == g.node_count(), "ages/graph size mismatch");
    GapProfile p;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        if (!labeled(ages, u))
            continue;
        const int au = age_of(ages, u);
        for (NodeIndex v : g.neighbors(u)) {
            if (v < u || !labeled(ages, v))
                continue;
            const auto gap = static_cast<std::size_t>(std::abs(au - age_of(ages, v)));
            if (p.counts.size() <= gap)
                p.counts.resize(gap + 1, 0);
            ++p.counts[gap];
            ++p.total;
        }
    }
    return p;
}

RegressionStats linked_age_regression(const Graph &g, std::span<const double> ages) {
    internal_check(ages.size() == g.node_count(), "ages/graph size mismatch");
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    std::uint64_t n = 0;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        if (!labeled(ages, u))
            continue;
        const double au = ages[u];
        for (NodeIndex v : g.neighbors(u)) {
            if (!labeled(ages, v))
                continue;
            const double av = ages[v]; // ordered pair (u, v)
            sx += au;
            sy += av;
            sxx += au * au;
            syy += av * av;
            sxy += au * av;
            ++n;
        }
    }
    if (n < 4) // fewer than 2 undirected labeled edges
        throw DataError("linked-age regression needs at least 2 labeled edges");
    const double nn = static_cast<double>(n);
    const double var_x = sxx - sx * sx / nn;
    const double var_y = syy - sy * sy / nn;
    const double cov = sxy - sx * sy / nn;
    if (var_x <= 0.0 || var_y <= 0.0)
        throw DataError("linked-age regression needs nonzero age variance");
    RegressionStats s;
    s.pairs = n;
    s.slope = cov / var_x;
    s.intercept = (sy - s.slope * sx) / nn;
    s.r = cov / std::sqrt(var_x * var_y);
    return s;
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
} // namespace

void write_age_matrix(const AgeMatrix &m, std::ostream &out) {
    out << "age";
    for (int j = 0; j < m.values.cols(); ++j)
        out << '\t' << m.min_age + j;
    out << '\n';
    for (int i = 0; i < m.values.rows(); ++i) {
        out << m.min_age + i;
        for (int j = 0; j < m.values.cols(); ++j)
            out << '\t' << fmt(m.values(i, j));
        out << '\n';
    }
}

void write_log_difference(const Matrix &m, int min_age, std::ostream &out) {
    AgeMatrix wrap;
    wrap.min_age = min_age;
    wrap.values = m;
    write_age_matrix(wrap, out);
}

void write_gap_profile(const GapProfile &p, std::ostream &out) {
    out << "age_gap\tlinks\n";
    for (std::size_t d = 0; d < p.counts.size(); ++d)
        out << d << '\t' << p.counts[d] << '\n';
}

void write_regression(const RegressionStats &s, std::ostream &out) {
    out << "pairs\t" << s.pairs << "\nr\t" << fmt(s.r) << "\nslope\t" << fmt(s.slope)
        << "\nintercept\t" << fmt(s.intercept) << '\n';
}

} // namespace demograph
