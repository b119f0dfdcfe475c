#pragma once

#include <cstdint>
#include <vector>

namespace buchi::detail {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

struct SccDecomposition {
    std::vector<std::uint32_t> component;  // vertex -> component id
    std::vector<char> nontrivial;          // component has an internal edge; size count + 1
    std::size_t count = 0;
};

/// Tarjan's algorithm, iterative. Vertices with alive[v] == 0 are ignored;
/// an empty `alive` means every vertex is present. Ignored vertices get
/// component id `count` (one past the last real component).
SccDecomposition strongly_connected_components(const Adjacency& succ,
                                               const std::vector<char>& alive = {});

/// Vertices from which some vertex with mark[v] != 0 is reachable (including
/// the marked ones), following only alive vertices.
std::vector<char> backward_closure(const Adjacency& succ, const std::vector<char>& mark,
                                   const std::vector<char>& alive = {});

/// Vertices reachable from `roots`.
std::vector<char> forward_closure(const Adjacency& succ, const std::vector<std::uint32_t>& roots);

}  // namespace buchi::detail
