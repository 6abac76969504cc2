#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "demograph/graph.hpp"
#include "demograph/types.hpp"

namespace demograph {

/// Square matrix indexed by integer age over the observed labeled-age range.
/// Holds link counts (C) or expected counts under independence (R).
struct AgeMatrix {
    int min_age = 0;
    Matrix values; ///< (max_age - min_age + 1)^2

    int max_age() const { return min_age + static_cast<int>(values.rows()) - 1; }
    double at(int age_i, int age_j) const { return values(age_i - min_age, age_j - min_age); }
    double total_mass() const { return values.sum(); }
};

/// Ordered-pair link counts between ages over the edges whose both endpoints
/// are labeled: every undirected edge contributes to (i,j) and (j,i), so the
/// total mass is 2|E_GT| and the marginals are per-age degree sums.
/// ages: per node, NaN = unlabeled.
AgeMatrix communication_matrix(const Graph &g, std::span<const double> ages);

/// Expected link counts under age independence:
/// R_ij = (|N(i)|/|N|) (|N(j)|/|N|) * edge_mass, with the same mass
/// convention as the communication matrix.
AgeMatrix null_matrix(std::span<const double> ages, double edge_mass);

/// log(C + eps) - log(R + eps); eps guards empty cells.
Matrix log_difference(const AgeMatrix &comm, const AgeMatrix &null, double eps = 0.5);

/// Link count per absolute age difference (each undirected edge once).
struct GapProfile {
    std::vector<std::uint64_t> counts; ///< index = age gap in years
    std::uint64_t total = 0;
};

GapProfile gap_profile(const Graph &g, std::span<const double> ages);

struct RegressionStats {
    double r = 0.0;     ///< Pearson correlation over ordered labeled pairs
    double slope = 0.0; ///< least-squares gradient of age(y) on age(x)
    double intercept = 0.0;
    std::uint64_t pairs = 0;
};

/// Least-squares fit over ordered labeled pairs (each edge in both
/// orientations, which makes slope and intercept well-defined).
/// Throws DataError with fewer than 2 labeled edges or zero age variance.
RegressionStats linked_age_regression(const Graph &g, std::span<const double> ages);

void write_age_matrix(const AgeMatrix &m, std::ostream &out);
void write_log_difference(const Matrix &m, int min_age, std::ostream &out);
void write_gap_profile(const GapProfile &p, std::ostream &out);
void write_regression(const RegressionStats &s, std::ostream &out);

} // namespace demograph
