#pragma once

#include <cstdint>
#include <limits>

#include <Eigen/Core>

namespace demograph {

/// Dense internal node index, 0..n-1.
using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint64_t;

inline constexpr NodeIndex kInvalidNode = std::numeric_limits<NodeIndex>::max();

/// Sentinel hop distance for nodes with no path to any seed.
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Per-node probability table: one row per node, one column per category.
/// Rows are the g_x vectors, so row-major keeps each node's vector contiguous.
using StateTable = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

} // namespace demograph
