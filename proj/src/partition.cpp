#include "demograph/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "demograph/error.hpp"
#include "demograph/rng.hpp"

namespace demograph {

void NodePartition::set_seed(NodeIndex u, int category) {
    internal_check(roles_[u] == Role::Unknown, "node role set twice");
    roles_[u] = Role::Seed;
    labels_[u] = category;
    ++seed_count_;
}

void NodePartition::set_validation(NodeIndex u, int category) {
    internal_check(roles_[u] == Role::Unknown, "node role set twice");
    roles_[u] = Role::Validation;
    labels_[u] = category;
    ++validation_count_;
}

std::vector<NodeIndex> NodePartition::seeds() const {
    std::vector<NodeIndex> out;
    out.reserve(seed_count_);
    for (NodeIndex u = 0; u < node_count(); ++u)
        if (roles_[u] == Role::Seed)
            out.push_back(u);
    return out;
}

std::vector<NodeIndex> NodePartition::validation_nodes() const {
    std::vector<NodeIndex> out;
    out.reserve(validation_count_);
    for (NodeIndex u = 0; u < node_count(); ++u)
        if (roles_[u] == Role::Validation)
            out.push_back(u);
    return out;
}

std::vector<LabeledNode> read_label_file(std::istream &in) {
    std::vector<LabeledNode> out;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i == line.size() || line[i] == '#')
            continue;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        std::size_t k = j;
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k])))
            ++k;
        std::size_t l = k;
        while (l < line.size() && !std::isspace(static_cast<unsigned char>(line[l])))
            ++l;
        if (j == i || l == k)
            throw DataError("label file line " + std::to_string(line_no) +
                            ": expected 'node_id value'");
        std::size_t rest = l;
        while (rest < line.size() && std::isspace(static_cast<unsigned char>(line[rest])))
            ++rest;
        if (rest != line.size())
            throw DataError("label file line " + std::to_string(line_no) +
                            ": trailing fields");
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(line.data() + k, line.data() + l, v);
        if (ec != std::errc() || ptr != line.data() + l)
            throw DataError("label file line " + std::to_string(line_no) + ": bad value '" +
                            line.substr(k, l - k) + "'");
        out.push_back({line.substr(i, j - i), v});
    }
    return out;
}

GroundTruth resolve_labels(const Graph &g, std::span<const LabeledNode> records,
                           const CategoryScheme &scheme, LabelMode mode) {
    GroundTruth gt;
    if (mode == LabelMode::Age)
        gt.ages.assign(g.node_count(), std::numeric_limits<double>::quiet_NaN());
    std::vector<std::int32_t> cat(g.node_count(), -1);
    for (const LabeledNode &rec : records) {
        auto u = g.find_external(rec.id);
        if (!u) {
            ++gt.dropped;
            continue;
        }
        int c;
        if (mode == LabelMode::Age) {
            c = scheme.assign(rec.value);
            gt.ages[*u] = rec.value;
        } else {
            c = static_cast<int>(rec.value);
            if (static_cast<double>(c) != rec.value || c < 0 ||
                c >= scheme.category_count())
                throw DataError("label for node '" + rec.id + "' is not a category in [0," +
                                std::to_string(scheme.category_count()) + ")");
        }
        cat[*u] = c; // later records for the same node win
    }
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        if (cat[u] >= 0)
            gt.labeled.emplace_back(u, cat[u]);
    return gt;
}

NodePartition split_ground_truth(NodeIndex n_nodes,
                                 std::span<const std::pair<NodeIndex, int>> labels,
                                 double seed_fraction, std::uint64_t rng_seed) {
    if (!(seed_fraction > 0.0 && seed_fraction < 1.0))
        throw ConfigError("seed_fraction must be in (0, 1)");
    if (labels.size() < 2)
        throw DataError("need at least 2 labeled nodes to split, got " +
                        std::to_string(labels.size()));
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    Rng rng(derive_stream(rng_seed, "split"));
    rng.shuffle(order.begin(), order.end());

    const auto n_seed = static_cast<std::size_t>(
        std::llround(seed_fraction * static_cast<double>(labels.size())));
    NodePartition p(n_nodes);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto &[node, category] = labels[order[i]];
        if (i < n_seed)
            p.set_seed(node, category);
        else
            p.set_validation(node, category);
    }
    return p;
}

NodePartition remap_partition(const NodePartition &p,
                              std::span<const NodeIndex> old_to_new, NodeIndex new_n) {
    NodePartition out(new_n);
    for (NodeIndex u = 0; u < p.node_count(); ++u) {
        const NodeIndex v = old_to_new[u];
        if (v == kInvalidNode)
            continue;
        if (p.role(u) == Role::Seed)
            out.set_seed(v, p.label(u));
        else if (p.role(u) == Role::Validation)
            out.set_validation(v, p.label(u));
    }
    return out;
}

void write_partition(const Graph &g, const NodePartition &p, std::ostream &out) {
    static const char *kRoleNames[] = {"unknown", "seed", "validation"};
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        out << g.external_id(u) << '\t' << kRoleNames[static_cast<int>(p.role(u))] << '\t'
            << p.label(u) << '\n';
}

NodePartition read_partition(const Graph &g, std::istream &in) {
    NodePartition p(g.node_count());
    std::string id, role;
    int label;
    while (in >> id >> role >> label) {
        auto u = g.find_external(id);
        if (!u)
            throw DataError("partition file references unknown node '" + id + "'");
        if (role == "seed")
            p.set_seed(*u, label);
        else if (role == "validation")
            p.set_validation(*u, label);
        else if (role != "unknown")
            throw DataError("partition file: bad role '" + role + "'");
    }
    return p;
}

} // namespace demograph
