#include "demograph/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "demograph/error.hpp"
#include "demograph/rng.hpp"

namespace demograph {

void write_probability_table(const Graph &g, const PropagationState &s, std::ostream &out) {
    const NodeIndex n = g.node_count();
    internal_check(s.node_count() == n, "state/graph size mismatch");
    const int C = s.category_count();
    char buf[40];
    for (NodeIndex u = 0; u < n; ++u) {
        out << g.external_id(u);
        for (int c = 0; c < C; ++c) {
            std::snprintf(buf, sizeof(buf), "%.9f", s.current(u, c));
            out << '\t' << buf;
        }
        out << '\t' << (s.informed[u] ? 1 : 0) << '\n';
    }
}

ProbabilityTable read_probability_table(const Graph &g, int category_count,
                                        std::istream &in) {
    ProbabilityTable t;
    t.values.setZero(g.node_count(), category_count);
    t.informed.assign(g.node_count(), 0);
    std::string id;
    std::uint64_t rows = 0;
    while (in >> id) {
        auto u = g.find_external(id);
        if (!u)
            throw DataError("probability table references unknown node '" + id + "'");
        for (int c = 0; c < category_count; ++c) {
            double v;
            if (!(in >> v))
                throw DataError("probability table: truncated row for node '" + id + "'");
            t.values(*u, c) = v;
        }
        int informed;
        if (!(in >> informed) || (informed != 0 && informed != 1))
            throw DataError("probability table: bad informed flag for node '" + id + "'");
        t.informed[*u] = static_cast<std::uint8_t>(informed);
        ++rows;
    }
    if (rows != g.node_count())
        throw DataError("probability table row count mismatch");
    return t;
}

namespace {
const char *source_name(AssignmentSource s) {
    switch (s) {
    case AssignmentSource::Argmax:
        return "argmax";
    case AssignmentSource::Pps:
        return "pps";
    default:
        return "unassigned";
    }
}
} // namespace

void write_assignments(const Graph &g, const Assignment &a, const CategoryScheme &scheme,
                       std::ostream &out) {
    internal_check(a.node_count() == g.node_count(), "assignment/graph size mismatch");
    char buf[40];
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        std::snprintf(buf, sizeof(buf), "%.9f", a.confidence[u]);
        out << g.external_id(u) << '\t'
            << (a.category[u] >= 0 ? scheme.label(a.category[u]) : "-") << '\t' << buf
            << '\t' << source_name(a.source[u]) << '\n';
    }
}

Assignment read_assignments(const Graph &g, const CategoryScheme &scheme, std::istream &in) {
    Assignment a;
    a.category.assign(g.node_count(), -1);
    a.confidence.assign(g.node_count(), 0.0);
    a.source.assign(g.node_count(), AssignmentSource::Unassigned);

    std::vector<std::string> labels = scheme.labels();
    std::string id, label, source;
    double confidence;
    while (in >> id >> label >> confidence >> source) {
        auto u = g.find_external(id);
        if (!u)
            throw DataError("assignment table references unknown node '" + id + "'");
        if (label != "-") {
            auto it = std::find(labels.begin(), labels.end(), label);
            if (it == labels.end())
                throw DataError("assignment table: unknown category label '" + label + "'");
            a.category[*u] = static_cast<std::int32_t>(it - labels.begin());
        }
        a.confidence[*u] = confidence;
        if (source == "argmax")
            a.source[*u] = AssignmentSource::Argmax;
        else if (source == "pps")
            a.source[*u] = AssignmentSource::Pps;
        else if (source == "unassigned")
            a.source[*u] = AssignmentSource::Unassigned;
        else
            throw DataError("assignment table: bad source '" + source + "'");
    }
    return a;
}

std::string hash_bytes(std::string_view bytes) {
    const std::uint64_t h = fnv1a64(bytes);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string hash_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open file for hashing: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return hash_bytes(ss.str());
}

} // namespace demograph
