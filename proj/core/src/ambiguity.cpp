#include "buchi/ambiguity.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "graph.hpp"

namespace buchi {

namespace {

detail::Adjacency state_graph(const Nbw& a) {
    detail::Adjacency succ(a.num_states());
    for (State s = 0; s < a.num_states(); ++s) {
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
            for (State t : a.successors(s, sym)) succ[s].push_back(t);
        }
    }
    return succ;
}

/// Breadth-first search over an implicit product graph with integer vertex
/// ids. `expand(v, sym, emit)` calls emit(w) for each sym-successor w of v.
template <typename Expand>
std::optional<std::vector<Symbol>> shortest_word(std::size_t num_vertices, std::size_t alphabet_size,
                                                 std::size_t start, std::size_t target,
                                                 Expand&& expand) {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(num_vertices, kNone);
    std::vector<Symbol> via(num_vertices, 0);
    std::deque<std::size_t> queue{start};
    parent[start] = start;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (Symbol sym = 0; sym < alphabet_size; ++sym) {
            bool found = false;
            expand(v, sym, [&](std::size_t w) {
                if (found || parent[w] != kNone) return;
                parent[w] = v;
                via[w] = sym;
                if (w == target) {
                    found = true;
                    return;
                }
                queue.push_back(w);
            });
            if (found) {
                std::vector<Symbol> word;
                for (std::size_t u = target; ; u = parent[u]) {
                    word.push_back(via[u]);
                    if (parent[u] == start) break;
                }
                std::reverse(word.begin(), word.end());
                return word;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

AmbiguityVerdict is_finitely_ambiguous(const Nbw& a) {
    const std::size_t n = a.num_states();
    const std::size_t k = a.alphabet_size();
    const auto succ = state_graph(a);
    const auto reachable = detail::forward_closure(succ, a.initial());
    const auto scc = detail::strongly_connected_components(succ, reachable);

    std::vector<char> comp_accepting(scc.count + 1, 0);
    for (State s = 0; s < n; ++s) {
        if (reachable[s] && a.is_accepting(s) && scc.nontrivial[scc.component[s]]) {
            comp_accepting[scc.component[s]] = 1;
        }
    }
    auto on_accepting_cycle = [&](State s) {
        return reachable[s] && comp_accepting[scc.component[s]] != 0;
    };
    auto same_comp = [&](State x, State y) { return scc.component[x] == scc.component[y]; };

    // Two distinct runs q -> q on one word, the first of them through F.
    for (State q = 0; q < n; ++q) {
        if (!on_accepting_cycle(q)) continue;
        // flags: bit 0 runs have diverged, bit 1 first run saw F
        auto id = [&](State x, State y, int flags) { return (x * n + y) * 4 + flags; };
        auto expand = [&](std::size_t v, Symbol sym, auto&& emit) {
            const int flags = static_cast<int>(v % 4);
            const auto x = static_cast<State>(v / 4 / n);
            const auto y = static_cast<State>(v / 4 % n);
            for (State x2 : a.successors(x, sym)) {
                if (!same_comp(x2, q)) continue;
                const int fx = a.is_accepting(x2) ? 2 : 0;
                for (State y2 : a.successors(y, sym)) {
                    if (!same_comp(y2, q)) continue;
                    emit(id(x2, y2, flags | fx | (x2 != y2 ? 1 : 0)));
                }
            }
        };
        if (auto word = shortest_word(n * n * 4, k, id(q, q, 0), id(q, q, 3), expand)) {
            return {false, AmbiguityWitness{AmbiguityWitness::Kind::two_cycles, q, q, *word}};
        }
    }

    // A loop at p that can escape on the same word into an accepting loop at t.
    for (State p = 0; p < n; ++p) {
        if (!reachable[p] || !scc.nontrivial[scc.component[p]]) continue;
        for (State t = 0; t < n; ++t) {
            if (t == p || !on_accepting_cycle(t)) continue;
            auto id = [&](State x, State y, State z, int flag) {
                return ((x * n + y) * n + z) * 2 + flag;
            };
            auto expand = [&](std::size_t v, Symbol sym, auto&& emit) {
                const int flag = static_cast<int>(v % 2);
                std::size_t rest = v / 2;
                const auto z = static_cast<State>(rest % n);
                rest /= n;
                const auto y = static_cast<State>(rest % n);
                const auto x = static_cast<State>(rest / n);
                for (State x2 : a.successors(x, sym)) {
                    if (!same_comp(x2, p)) continue;
                    for (State y2 : a.successors(y, sym)) {
                        for (State z2 : a.successors(z, sym)) {
                            if (!same_comp(z2, t)) continue;
                            emit(id(x2, y2, z2, flag | (a.is_accepting(z2) ? 1 : 0)));
                        }
                    }
                }
            };
            if (auto word = shortest_word(n * n * n * 2, k, id(p, p, t, 0), id(p, t, t, 1), expand)) {
                return {false, AmbiguityWitness{AmbiguityWitness::Kind::cycle_and_escape, p, t, *word}};
            }
        }
    }
    return {true, std::nullopt};
}

std::uint64_t count_accepting_run_prefixes(const Nbw& a, const LassoWord& w, std::size_t length) {
    validate_lasso(w, a.alphabet_size());
    if (length == 0) return 0;
    const std::size_t n = a.num_states();
    const std::size_t period = w.stem.size() + w.loop.size();
    auto next_pos = [&](std::size_t pos) { return pos + 1 < period ? pos + 1 : w.stem.size(); };
    auto vid = [&](State q, std::size_t pos) { return static_cast<std::uint32_t>(pos * n + q); };

    detail::Adjacency succ(n * period);
    std::vector<char> accepting(n * period, 0);
    for (std::size_t pos = 0; pos < period; ++pos) {
        for (State q = 0; q < n; ++q) {
            accepting[vid(q, pos)] = a.is_accepting(q) ? 1 : 0;
            for (State t : a.successors(q, w.at(pos))) succ[vid(q, pos)].push_back(vid(t, next_pos(pos)));
        }
    }
    const auto scc = detail::strongly_connected_components(succ);
    std::vector<char> on_cycle(succ.size(), 0);
    std::vector<char> comp_accepting(scc.count + 1, 0);
    for (std::size_t v = 0; v < succ.size(); ++v) {
        if (accepting[v] && scc.nontrivial[scc.component[v]]) comp_accepting[scc.component[v]] = 1;
    }
    for (std::size_t v = 0; v < succ.size(); ++v) on_cycle[v] = comp_accepting[scc.component[v]];
    const auto good = detail::backward_closure(succ, on_cycle);

    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    auto sat_add = [](std::uint64_t x, std::uint64_t y) { return x > kMax - y ? kMax : x + y; };

    std::vector<std::uint64_t> count(n, 0);
    for (State q : a.initial()) count[q] = 1;
    std::size_t pos = 0;
    for (std::size_t step = 1; step < length; ++step) {
        std::vector<std::uint64_t> next(n, 0);
        for (State q = 0; q < n; ++q) {
            if (count[q] == 0) continue;
            for (State t : a.successors(q, w.at(pos))) next[t] = sat_add(next[t], count[q]);
        }
        count = std::move(next);
        pos = next_pos(pos);
    }
    std::uint64_t total = 0;
    for (State q = 0; q < n; ++q) {
        if (good[vid(q, pos)]) total = sat_add(total, count[q]);
    }
    return total;
}

}  // namespace buchi
