#include "demograph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "demograph/error.hpp"

namespace demograph {

std::optional<NodeIndex> Graph::find_external(std::string_view id) const {
    auto it = ext_index_.find(std::string(id));
    return it == ext_index_.end() ? std::nullopt : std::optional<NodeIndex>(it->second);
}

void Graph::rebuild_index() {
    ext_index_.clear();
    ext_index_.reserve(ext_ids_.size());
    for (NodeIndex u = 0; u < ext_ids_.size(); ++u)
        ext_index_.emplace(ext_ids_[u], u);
}

void Graph::validate() const {
    const NodeIndex n = node_count();
    internal_check(offsets_.size() == static_cast<std::size_t>(n) + 1, "offsets size");
    internal_check(offsets_.front() == 0 && offsets_.back() == neighbors_.size(),
                   "offsets range");
    internal_check(weights_.size() == neighbors_.size(), "weights size");
    for (NodeIndex u = 0; u < n; ++u) {
        auto nb = neighbors(u);
        auto wt = edge_weights(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            internal_check(nb[k] < n, "neighbor id in range");
            internal_check(nb[k] != u, "no self-loops");
            if (k > 0)
                internal_check(nb[k - 1] < nb[k], "sorted, duplicate-free neighbor list");
            // symmetry with equal weight
            auto rnb = neighbors(nb[k]);
            auto it = std::lower_bound(rnb.begin(), rnb.end(), u);
            internal_check(it != rnb.end() && *it == u, "symmetric edge");
            const auto pos = static_cast<std::size_t>(it - rnb.begin());
            internal_check(edge_weights(nb[k])[pos] == wt[k], "symmetric weight");
        }
    }
}

NodeIndex GraphBuilder::intern(std::string_view id) {
    auto it = ext_index_.find(std::string(id));
    if (it != ext_index_.end())
        return it->second;
    const NodeIndex u = static_cast<NodeIndex>(ext_ids_.size());
    ext_ids_.emplace_back(id);
    ext_index_.emplace(ext_ids_.back(), u);
    return u;
}

NodeIndex GraphBuilder::add_node(std::string_view id) {
    return intern(id);
}

void GraphBuilder::add_edge(std::string_view u, std::string_view v, double weight) {
    const NodeIndex a = intern(u);
    const NodeIndex b = intern(v);
    if (a == b)
        return; // self-loop: node registered, edge dropped
    edges_.push_back({std::min(a, b), std::max(a, b), weight});
}

Graph GraphBuilder::build() {
    std::sort(edges_.begin(), edges_.end(), [](const RawEdge &x, const RawEdge &y) {
        return x.u != y.u ? x.u < y.u : x.v < y.v;
    });
    // collapse duplicates, keeping the maximum weight
    std::size_t out = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (out > 0 && edges_[out - 1].u == edges_[i].u && edges_[out - 1].v == edges_[i].v) {
            edges_[out - 1].w = std::max(edges_[out - 1].w, edges_[i].w);
        } else {
            edges_[out++] = edges_[i];
        }
    }
    edges_.resize(out);

    Graph g;
    const NodeIndex n = static_cast<NodeIndex>(ext_ids_.size());
    std::vector<EdgeIndex> deg(n, 0);
    for (const RawEdge &e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (NodeIndex u = 0; u < n; ++u)
        g.offsets_[u + 1] = g.offsets_[u] + deg[u];
    g.neighbors_.resize(g.offsets_[n]);
    g.weights_.resize(g.offsets_[n]);

    std::vector<EdgeIndex> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    bool uniform = true;
    for (const RawEdge &e : edges_) {
        g.neighbors_[cursor[e.u]] = e.v;
        g.weights_[cursor[e.u]++] = e.w;
        g.neighbors_[cursor[e.v]] = e.u;
        g.weights_[cursor[e.v]++] = e.w;
        uniform = uniform && e.w == 1.0;
    }
    // canonical edge order sorts each adjacency by neighbor id
    for (NodeIndex u = 0; u < n; ++u) {
        const EdgeIndex lo = g.offsets_[u], hi = g.offsets_[u + 1];
        std::vector<std::pair<NodeIndex, double>> row;
        row.reserve(hi - lo);
        for (EdgeIndex k = lo; k < hi; ++k)
            row.emplace_back(g.neighbors_[k], g.weights_[k]);
        std::sort(row.begin(), row.end());
        for (EdgeIndex k = lo; k < hi; ++k) {
            g.neighbors_[k] = row[k - lo].first;
            g.weights_[k] = row[k - lo].second;
        }
    }
    g.uniform_weights_ = uniform;
    g.ext_ids_ = std::move(ext_ids_);
    g.ext_index_ = std::move(ext_index_);
    edges_.clear();
    return g;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line,
                                           const EdgeListSchema &schema) {
    std::vector<std::string_view> fields;
    if (schema.delimiter) {
        const char d = *schema.delimiter;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t end = line.find(d, start);
            if (end == std::string_view::npos)
                end = line.size();
            fields.push_back(line.substr(start, end - start));
            start = end + 1;
            if (end == line.size())
                break;
        }
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
                ++j;
            if (j > i)
                fields.push_back(line.substr(i, j - i));
            i = j;
        }
    }
    return fields;
}

double parse_weight(std::string_view tok, std::uint64_t line_no) {
    double w = 0.0;
    const char *begin = tok.data(), *end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, w);
    if (ec != std::errc() || ptr != end)
        throw DataError("line " + std::to_string(line_no) + ": bad weight '" +
                        std::string(tok) + "'");
    if (!(w > 0.0))
        throw DataError("line " + std::to_string(line_no) + ": weight must be > 0, got " +
                        std::string(tok));
    return w;
}

bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        return c == '#';
    }
    return true;
}

} // namespace

Graph ingest_edge_list(std::istream &in, const EdgeListSchema &schema) {
    GraphBuilder builder;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (is_blank_or_comment(line))
            continue;
        auto fields = split_fields(line, schema);
        if (fields.size() != 2 && fields.size() != 3)
            throw DataError("line " + std::to_string(line_no) +
                            ": expected 'src dst [weight]', got " +
                            std::to_string(fields.size()) + " field(s)");
        if (fields[0].empty() || fields[1].empty())
            throw DataError("line " + std::to_string(line_no) + ": empty node id");
        const double w = fields.size() == 3 ? parse_weight(fields[2], line_no) : 1.0;
        builder.add_edge(fields[0], fields[1], w);
    }
    return builder.build();
}

void write_edge_list(const Graph &g, std::ostream &out) {
    char buf[64];
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
        auto nb = g.neighbors(u);
        auto wt = g.edge_weights(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (nb[k] < u)
                continue; // emit each undirected edge once, (min, max) order
            std::snprintf(buf, sizeof(buf), "%.17g", wt[k]);
            out << g.external_id(u) << '\t' << g.external_id(nb[k]) << '\t' << buf << '\n';
        }
    }
}

Graph induced_subgraph(const Graph &g, const std::vector<bool> &keep,
                       std::vector<NodeIndex> *old_to_new) {
    const NodeIndex n = g.node_count();
    internal_check(keep.size() == n, "keep mask size");
    std::vector<NodeIndex> remap(n, kInvalidNode);
    Graph out;
    out.ext_ids_.clear();
    for (NodeIndex u = 0; u < n; ++u) {
        if (keep[u]) {
            remap[u] = static_cast<NodeIndex>(out.ext_ids_.size());
            out.ext_ids_.push_back(g.external_id(u));
        }
    }
    const NodeIndex m = static_cast<NodeIndex>(out.ext_ids_.size());
    out.offsets_.assign(m + 1, 0);
    for (NodeIndex u = 0; u < n; ++u) {
        if (!keep[u])
            continue;
        std::uint32_t d = 0;
        for (NodeIndex v : g.neighbors(u))
            d += keep[v] ? 1 : 0;
        out.offsets_[remap[u] + 1] = d;
    }
    for (NodeIndex u = 0; u < m; ++u)
        out.offsets_[u + 1] += out.offsets_[u];
    out.neighbors_.resize(out.offsets_[m]);
    out.weights_.resize(out.offsets_[m]);
    bool uniform = true;
    for (NodeIndex u = 0; u < n; ++u) {
        if (!keep[u])
            continue;
        EdgeIndex c = out.offsets_[remap[u]];
        auto nb = g.neighbors(u);
        auto wt = g.edge_weights(u);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (!keep[nb[k]])
                continue;
            out.neighbors_[c] = remap[nb[k]];
            out.weights_[c++] = wt[k];
            uniform = uniform && wt[k] == 1.0;
        }
        // source lists are sorted by old id; remap preserves relative order
    }
    out.uniform_weights_ = uniform;
    out.rebuild_index();
    if (old_to_new)
        *old_to_new = std::move(remap);
    return out;
}

} // namespace demograph
