#include "demograph/category.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "demograph/error.hpp"

namespace demograph {

CategoryScheme::CategoryScheme(std::vector<double> edges) : edges_(std::move(edges)) {
    // an empty cut list is the degenerate single-category scheme
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!std::isfinite(edges_[i]) || edges_[i] <= 0.0)
            throw ConfigError("category cut points must be finite and positive");
        if (i > 0 && edges_[i] <= edges_[i - 1])
            throw ConfigError("category cut points must be strictly increasing");
    }
}

int CategoryScheme::assign(double age) const {
    if (!(age >= 0.0))
        throw DataError("age must be non-negative, got " + std::to_string(age));
    auto it = std::upper_bound(edges_.begin(), edges_.end(), age);
    return static_cast<int>(it - edges_.begin());
}

namespace {
std::string fmt_cut(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}
} // namespace

std::string CategoryScheme::label(int category) const {
    const int c = category_count();
    if (category < 0 || category >= c)
        throw ConfigError("category index out of range");
    if (edges_.empty())
        return "all";
    if (category == 0)
        return "<" + fmt_cut(edges_.front());
    if (category == c - 1)
        return fmt_cut(edges_.back()) + "+";
    // upper end rendered inclusive: [25,35) prints as 25-34 for integer cuts
    const double hi = edges_[category];
    const double hi_incl = hi == std::floor(hi) ? hi - 1.0 : hi;
    return fmt_cut(edges_[category - 1]) + "-" + fmt_cut(hi_incl);
}

std::vector<std::string> CategoryScheme::labels() const {
    std::vector<std::string> out;
    for (int c = 0; c < category_count(); ++c)
        out.push_back(label(c));
    return out;
}

CategoryScheme parse_scheme(std::string_view csv) {
    std::vector<double> edges;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t end = csv.find(',', start);
        if (end == std::string_view::npos)
            end = csv.size();
        std::string_view tok = csv.substr(start, end - start);
        if (!tok.empty()) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ConfigError("bad scheme cut point '" + std::string(tok) + "'");
            edges.push_back(v);
        }
        if (end == csv.size())
            break;
        start = end + 1;
    }
    return CategoryScheme(std::move(edges));
}

} // namespace demograph
