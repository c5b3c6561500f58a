#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace sumset {

/// Maximum bipartite matching by augmenting paths.
///
/// adjacency[u] lists the right vertices (< right_count) that left vertex u
/// may be matched to. Returns, per left vertex, its matched right vertex.
std::vector<std::optional<std::size_t>> maximum_matching(const std::vector<std::vector<std::size_t>>& adjacency,
                                                         std::size_t right_count);

}  // namespace sumset
