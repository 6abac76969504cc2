#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "demograph/category.hpp"
#include "demograph/graph.hpp"
#include "demograph/labeling.hpp"
#include "demograph/propagation.hpp"
#include "demograph/types.hpp"

namespace demograph {

/// `node_id p_0 .. p_{C-1} informed` rows, fixed 9-decimal columns.
void write_probability_table(const Graph &g, const PropagationState &s, std::ostream &out);

struct ProbabilityTable {
    StateTable values;
    std::vector<std::uint8_t> informed;
};

ProbabilityTable read_probability_table(const Graph &g, int category_count, std::istream &in);

/// `node_id category_label confidence source` rows.
void write_assignments(const Graph &g, const Assignment &a, const CategoryScheme &scheme,
                       std::ostream &out);

Assignment read_assignments(const Graph &g, const CategoryScheme &scheme, std::istream &in);

/// FNV-1a over a file's bytes, rendered as 16 hex digits.
std::string hash_file(const std::string &path);
std::string hash_bytes(std::string_view bytes);

} // namespace demograph
