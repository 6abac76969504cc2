#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace demograph {

/// Ordered age cut points defining C = edges+1 half-open bins
/// [0, e0), [e0, e1), ..., [eK, inf). The default scheme is
/// <25 / 25-34 / 35-49 / 50+.
class CategoryScheme {
public:
    explicit CategoryScheme(std::vector<double> edges);

    static CategoryScheme default_scheme() { return CategoryScheme({25.0, 35.0, 50.0}); }

    int category_count() const { return static_cast<int>(edges_.size()) + 1; }
    const std::vector<double> &edges() const { return edges_; }

    /// Bin index of an age; bins are left-closed/right-open, the last bin is
    /// unbounded above. Throws DataError for negative ages.
    int assign(double age) const;

    /// Human label: "<25", "25-34", "35-49", "50+".
    std::string label(int category) const;
    std::vector<std::string> labels() const;

private:
    std::vector<double> edges_;
};

/// Parses a comma-separated cut-point list, e.g. "25,35,50".
CategoryScheme parse_scheme(std::string_view csv);

} // namespace demograph
