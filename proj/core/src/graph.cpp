#include "graph.hpp"

#include <algorithm>
#include <limits>

namespace buchi::detail {

namespace {
constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

bool is_alive(const std::vector<char>& alive, std::uint32_t v) {
    return alive.empty() || alive[v] != 0;
}
}  // namespace

SccDecomposition strongly_connected_components(const Adjacency& succ,
                                               const std::vector<char>& alive) {
    const std::size_t n = succ.size();
    SccDecomposition out;
    out.component.assign(n, kUnvisited);

    std::vector<std::uint32_t> index(n, kUnvisited);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    // (vertex, next edge position)
    std::vector<std::pair<std::uint32_t, std::size_t>> call;
    std::uint32_t next_index = 0;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (!is_alive(alive, root) || index[root] != kUnvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < succ[v].size()) {
                const std::uint32_t w = succ[v][pos++];
                if (!is_alive(alive, w)) continue;
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) {
                const std::uint32_t parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                const auto id = static_cast<std::uint32_t>(out.count++);
                std::uint32_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    out.component[w] = id;
                } while (w != done);
            }
        }
    }

    out.nontrivial.assign(out.count + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (out.component[v] == kUnvisited) {
            out.component[v] = static_cast<std::uint32_t>(out.count);
            continue;
        }
        for (std::uint32_t w : succ[v]) {
            if (is_alive(alive, w) && out.component[w] == out.component[v]) {
                out.nontrivial[out.component[v]] = 1;
            }
        }
    }
    return out;
}

std::vector<char> backward_closure(const Adjacency& succ, const std::vector<char>& mark,
                                   const std::vector<char>& alive) {
    const std::size_t n = succ.size();
    Adjacency pred(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!is_alive(alive, v)) continue;
        for (std::uint32_t w : succ[v]) {
            if (is_alive(alive, w)) pred[w].push_back(v);
        }
    }
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> work;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (mark[v] && is_alive(alive, v)) {
            seen[v] = 1;
            work.push_back(v);
        }
    }
    while (!work.empty()) {
        const std::uint32_t v = work.back();
        work.pop_back();
        for (std::uint32_t p : pred[v]) {
            if (!seen[p]) {
                seen[p] = 1;
                work.push_back(p);
            }
        }
    }
    return seen;
}

std::vector<char> forward_closure(const Adjacency& succ, const std::vector<std::uint32_t>& roots) {
    std::vector<char> seen(succ.size(), 0);
    std::vector<std::uint32_t> work;
    for (std::uint32_t r : roots) {
        if (!seen[r]) {
            seen[r] = 1;
            work.push_back(r);
        }
    }
    while (!work.empty()) {
        const std::uint32_t v = work.back();
        work.pop_back();
        for (std::uint32_t w : succ[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                work.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace buchi::detail
