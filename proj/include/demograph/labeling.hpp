#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "demograph/category.hpp"
#include "demograph/partition.hpp"
#include "demograph/types.hpp"

namespace demograph {

enum class AssignmentSource : std::uint8_t { Argmax = 0, Pps = 1, Unassigned = 2 };

/// Collapsed category per node. category = -1 marks Unassigned; confidence
/// keeps the probability of the (originally) chosen category either way.
struct Assignment {
    std::vector<std::int32_t> category;
    std::vector<double> confidence;
    std::vector<AssignmentSource> source;

    std::size_t node_count() const { return category.size(); }
    std::size_t assigned_count() const;
    std::vector<std::int64_t> histogram(int category_count) const;
};

/// Per node, the smallest category index reaching the maximum probability.
Assignment collapse_argmax(const StateTable &table);

/// Nodes with confidence < tau become Unassigned; the rest pass through.
Assignment filter_by_threshold(Assignment a, double tau);

/// Target count per category; sums to the number of nodes to assign.
struct QuotaPlan {
    std::vector<std::int64_t> per_category;

    std::int64_t total() const;
};

/// Largest-remainder apportionment of n by the target fractions
/// (ties broken toward lower category index). Fractions must sum to 1
/// within 1e-9 and be non-negative.
QuotaPlan compute_quotas(std::span<const double> fractions, std::int64_t n);

/// Greedy global collapse under a per-category quota: all (node, category,
/// probability) tuples are scanned in descending probability order (ties:
/// lower node id, then lower category) and a node takes the first category
/// whose quota is still open. The quota total must equal the node count,
/// which guarantees every node ends assigned; the output histogram equals
/// the quotas exactly.
Assignment pps_assign(const StateTable &table, const QuotaPlan &quotas);

/// Seed-category shares, the usual quota target distribution.
std::vector<double> seed_category_fractions(const NodePartition &p, int category_count);

/// Quotas for the non-seed remainder: the full-population plan minus one per
/// seed of each category. Over-seeded categories clamp at zero and the
/// surplus comes off the largest remaining quotas, one unit at a time.
QuotaPlan decrement_quotas_by_seeds(const QuotaPlan &all, const NodePartition &p);

enum class PpsScope { All, NonSeed };

/// PPS with quotas from the seed distribution. Scope All runs over every
/// node; NonSeed pre-assigns seeds to their known label and fills the rest
/// against the decremented quotas.
Assignment pps_assign_scoped(const StateTable &table, const NodePartition &p,
                             const CategoryScheme &scheme, PpsScope scope);

} // namespace demograph
