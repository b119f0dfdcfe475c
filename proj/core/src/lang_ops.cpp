#include "buchi/lang_ops.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "buchi/ambiguity.hpp"
#include "buchi/slice_ncb.hpp"
#include "graph.hpp"

namespace buchi {

namespace {

using LabeledGraph = std::vector<std::vector<std::pair<Symbol, std::uint32_t>>>;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

void require_same_alphabet(const Nbw& a, const Nbw& b) {
    if (a.alphabet() != b.alphabet()) {
        throw std::invalid_argument("automata have different alphabets");
    }
}

/// Shortest path words by BFS. Returns the word from a root (or from `from`'s
/// successors when `from` is set) to the first vertex satisfying `is_target`.
template <typename Target, typename Allowed>
std::optional<std::pair<std::vector<Symbol>, std::uint32_t>> bfs_word(
    const LabeledGraph& g, const std::vector<std::uint32_t>& roots, std::optional<std::uint32_t> from,
    Target&& is_target, Allowed&& allowed) {
    std::vector<std::uint32_t> parent(g.size(), kNone);
    std::vector<Symbol> via(g.size(), 0);
    std::deque<std::uint32_t> queue;
    auto word_to = [&](std::uint32_t v) {
        std::vector<Symbol> word;
        for (std::uint32_t u = v; parent[u] != u; u = parent[u]) {
            word.push_back(via[u]);
            if (from && parent[u] == *from) break;
        }
        std::reverse(word.begin(), word.end());
        return std::make_pair(std::move(word), v);
    };
    if (from) {
        // Seed with the out-edges of `from`; the path must have at least one edge.
        parent[*from] = *from;
        for (auto [sym, w] : g[*from]) {
            if (!allowed(w)) continue;
            if (w == *from) return std::make_pair(std::vector<Symbol>{sym}, w);
            if (parent[w] != kNone) continue;
            parent[w] = *from;
            via[w] = sym;
            queue.push_back(w);
        }
    } else {
        for (std::uint32_t r : roots) {
            if (parent[r] != kNone) continue;
            parent[r] = r;
            if (is_target(r)) return word_to(r);
            queue.push_back(r);
        }
    }
    while (!queue.empty()) {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        if (is_target(v)) return word_to(v);
        for (auto [sym, w] : g[v]) {
            if (!allowed(w)) continue;
            if (from && w == *from) {
                auto out = word_to(v);
                out.first.push_back(sym);
                out.second = w;
                return out;
            }
            if (parent[w] != kNone) continue;
            parent[w] = v;
            via[w] = sym;
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

/// Lasso through an accepting vertex of component `comp`: shortest stem,
/// then the shortest cycle inside the component.
template <typename InComp, typename Accepting>
LassoWord lasso_witness(const LabeledGraph& g, const std::vector<std::uint32_t>& roots,
                        InComp&& in_comp, Accepting&& accepting) {
    auto any = [](std::uint32_t) { return true; };
    auto target = [&](std::uint32_t v) { return in_comp(v) && accepting(v); };
    auto stem = bfs_word(g, roots, std::nullopt, target, any);
    if (!stem) throw std::logic_error("no path to the accepting component");
    auto never = [](std::uint32_t) { return false; };
    auto loop = bfs_word(g, roots, stem->second, never, in_comp);
    if (!loop) throw std::logic_error("accepting component has no cycle");
    return {std::move(stem->first), std::move(loop->first)};
}

LabeledGraph labeled_graph(const Nbw& a) {
    LabeledGraph g(a.num_states());
    for (State s = 0; s < a.num_states(); ++s) {
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
            for (State t : a.successors(s, sym)) g[s].emplace_back(sym, t);
        }
    }
    return g;
}

}  // namespace

namespace {

// Product with a budget on states and on edges; both overflow as length_error.
Nbw bounded_intersect(const Nbw& a, const Nbw& b, std::size_t state_limit) {
    require_same_alphabet(a, b);
    const std::size_t edge_limit =
        state_limit > std::numeric_limits<std::size_t>::max() / 64 ? state_limit : state_limit * 64;
    std::size_t edges = 0;
    Nbw out(0, a.alphabet());
    const std::size_t nb = b.num_states();
    auto key = [&](State p, State q, unsigned phase) { return (std::uint64_t{p} * nb + q) * 2 + phase; };
    // Dense index when the key space is small, hashing otherwise.
    constexpr std::uint64_t kDenseKeys = std::uint64_t{1} << 26;
    constexpr State kUnseen = std::numeric_limits<State>::max();
    const std::uint64_t keys = std::uint64_t{a.num_states()} * nb * 2;
    std::vector<State> dense(keys <= kDenseKeys ? keys : 0, kUnseen);
    std::unordered_map<std::uint64_t, State> sparse;
    std::vector<std::tuple<State, State, unsigned>> states;
    std::deque<State> queue;
    auto intern = [&](State p, State q, unsigned phase) {
        const std::uint64_t k = key(p, q, phase);
        State& slot = dense.empty() ? sparse.try_emplace(k, kUnseen).first->second : dense[k];
        if (slot == kUnseen) {
            slot = static_cast<State>(states.size());
            states.emplace_back(p, q, phase);
            if (states.size() > state_limit) {
                throw std::length_error("product exceeds the state limit of " + std::to_string(state_limit));
            }
            out.add_state(phase == 0 && a.is_accepting(p));
            queue.push_back(slot);
        }
        return slot;
    };
    for (State p : a.initial()) {
        for (State q : b.initial()) out.add_initial(intern(p, q, 0));
    }
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        const auto [p, q, phase] = states[s];
        const unsigned next_phase = phase == 0 ? (a.is_accepting(p) ? 1U : 0U)
                                               : (b.is_accepting(q) ? 0U : 1U);
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
            std::vector<State> targets;
            for (State p2 : a.successors(p, sym)) {
                for (State q2 : b.successors(q, sym)) targets.push_back(intern(p2, q2, next_phase));
            }
            edges += targets.size();
            if (edges > edge_limit) {
                throw std::length_error("product exceeds the edge limit of " + std::to_string(edge_limit));
            }
            out.set_successors(s, sym, std::move(targets));
        }
    }
    return out;
}

}  // namespace

Nbw intersect(const Nbw& a, const Nbw& b) {
    return bounded_intersect(a, b, std::numeric_limits<std::size_t>::max());
}

EmptinessResult is_empty(const Nbw& a) {
    detail::Adjacency succ(a.num_states());
    for (State s = 0; s < a.num_states(); ++s) {
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
            const auto& next = a.successors(s, sym);
            succ[s].insert(succ[s].end(), next.begin(), next.end());
        }
    }
    const auto reachable = detail::forward_closure(succ, a.initial());
    const auto scc = detail::strongly_connected_components(succ, reachable);
    std::vector<char> good_comp(scc.count + 1, 0);
    bool any = false;
    for (State s = 0; s < a.num_states(); ++s) {
        if (reachable[s] && a.is_accepting(s) && scc.nontrivial[scc.component[s]]) {
            good_comp[scc.component[s]] = 1;
            any = true;
        }
    }
    if (!any) return {true, std::nullopt};

    // Stem to the nearest accepting state on a cycle, then a loop in its component.
    const LabeledGraph g = labeled_graph(a);
    auto target = [&](std::uint32_t v) { return a.is_accepting(v) && good_comp[scc.component[v]] != 0; };
    auto all = [](std::uint32_t) { return true; };
    auto stem = bfs_word(g, a.initial(), std::nullopt, target, all);
    const std::uint32_t comp = scc.component[stem->second];
    auto in_comp = [&](std::uint32_t v) { return scc.component[v] == comp; };
    auto never = [](std::uint32_t) { return false; };
    auto loop = bfs_word(g, {}, stem->second, never, in_comp);
    return {false, LassoWord{std::move(stem->first), std::move(loop->first)}};
}

Nbw lasso_automaton(const std::vector<std::string>& alphabet, const LassoWord& w) {
    validate_lasso(w, alphabet.size());
    const std::size_t period = w.stem.size() + w.loop.size();
    Nbw out(period, alphabet);
    out.add_initial(0);
    for (std::size_t i = 0; i < period; ++i) {
        out.set_accepting(static_cast<State>(i));
        const std::size_t next = i + 1 < period ? i + 1 : w.stem.size();
        out.add_transition(static_cast<State>(i), w.at(i), static_cast<State>(next));
    }
    return out;
}

bool member(const Nbw& a, const LassoWord& w) {
    // Product with lasso_automaton(w), indexed densely by (state, position)
    // and searched with an on-the-fly Tarjan. The word automaton accepts
    // everywhere, so the product accepts where `a` does.
    validate_lasso(w, a.alphabet_size());
    const std::size_t period = w.stem.size() + w.loop.size();
    const std::size_t total = a.num_states() * period;
    auto edges_of = [&](std::uint32_t v) {
        return a.successors(static_cast<State>(v / period), w.at(v % period));
    };
    auto target = [&](std::uint32_t v, State t) {
        const std::size_t pos = v % period;
        const std::size_t next = pos + 1 < period ? pos + 1 : w.stem.size();
        return static_cast<std::uint32_t>(t * period + next);
    };

    std::vector<std::uint32_t> index(total, kNone);
    std::vector<std::uint32_t> low(total, 0);
    std::vector<char> on_stack(total, 0);
    std::vector<std::uint32_t> stack;
    std::vector<std::pair<std::uint32_t, std::size_t>> call;
    std::uint32_t next_index = 0;

    for (State q0 : a.initial()) {
        const auto root = static_cast<std::uint32_t>(q0 * period);
        if (index[root] != kNone) continue;
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            const auto succ = edges_of(v);
            if (pos < succ.size()) {
                const std::uint32_t u = target(v, succ[pos++]);
                if (index[u] == kNone) {
                    index[u] = low[u] = next_index++;
                    stack.push_back(u);
                    on_stack[u] = 1;
                    call.emplace_back(u, 0);
                } else if (on_stack[u]) {
                    low[v] = std::min(low[v], index[u]);
                }
                continue;
            }
            const std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] != index[done]) continue;
            // Pop the component; it is accepting if it has an internal edge
            // and an accepting state.
            const std::size_t base = stack.size();
            std::size_t first = base;
            do {
                --first;
            } while (stack[first] != done);
            bool accepting = false;
            bool cyclic = false;
            for (std::size_t i = first; i < base; ++i) {
                const std::uint32_t x = stack[i];
                accepting = accepting || a.is_accepting(static_cast<State>(x / period));
                for (State t : edges_of(x)) {
                    const std::uint32_t u = target(x, t);
                    cyclic = cyclic || (on_stack[u] && index[u] >= index[done]);
                }
            }
            if (accepting && cyclic) return true;
            for (std::size_t i = first; i < base; ++i) on_stack[stack[i]] = 0;
            stack.resize(first);
        }
    }
    return false;
}

Method parse_method(std::string_view name) {
    if (name == "kv") return Method::kv;
    if (name == "kv-fa") return Method::kv_fa;
    if (name == "ncb") return Method::ncb;
    throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected kv, kv-fa or ncb)");
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::kv: return "kv";
        case Method::kv_fa: return "kv-fa";
        case Method::ncb: return "ncb";
    }
    return "?";
}

bool needs_finite_ambiguity(Method m) { return m != Method::kv; }

namespace {

Nbw prepared_operand(const Nbw& a, Method m) {
    Nbw full = complete(a);
    require_macro_size(full);
    if (needs_finite_ambiguity(m) && !is_finitely_ambiguous(full).finitely_ambiguous) {
        throw NotFinitelyAmbiguous("method " + std::string(method_name(m)) +
                                   " needs a finitely ambiguous automaton");
    }
    return full;
}

struct ProductKey {
    State p;
    NcbMacrostate m;
    unsigned char phase;
    bool operator==(const ProductKey&) const = default;
};

struct ProductKeyHash {
    std::size_t operator()(const ProductKey& k) const noexcept {
        return std::hash<NcbMacrostate>{}(k.m) * 31 + k.p * 2 + k.phase;
    }
};

/// On-the-fly Tarjan over lhs × ncb-complement(rhs), stopping at the first
/// accepting component.
ContainmentResult ncb_containment(const Nbw& lhs, const Nbw& rhs, bool prune, std::size_t limit) {
    const SuccessorTable table(rhs);
    ContainmentResult result;

    std::vector<ProductKey> nodes;
    std::unordered_map<ProductKey, std::uint32_t, ProductKeyHash> ids;
    LabeledGraph edges;
    std::vector<std::uint32_t> index;
    std::vector<std::uint32_t> low;
    std::vector<char> on_stack;
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0;
    // Finished (proven empty) Triple states by (lhs state, N): their C sets.
    std::map<std::pair<State, std::uint64_t>, std::vector<StateSet>> finished;

    struct Frame {
        std::uint32_t v;
        std::vector<std::pair<Symbol, ProductKey>> succ;
        std::size_t pos = 0;
    };
    std::vector<Frame> call;

    auto accepting = [&](std::uint32_t v) {
        return nodes[v].phase == 0 && lhs.is_accepting(nodes[v].p);
    };
    auto expand = [&](const ProductKey& k) {
        std::vector<std::pair<Symbol, ProductKey>> out;
        const unsigned char next_phase =
            k.phase == 0 ? (lhs.is_accepting(k.p) ? 1 : 0) : (k.m.is_accepting() ? 0 : 1);
        for (Symbol sym = 0; sym < lhs.alphabet_size(); ++sym) {
            const auto rhs_next = ncb_successors(table, k.m, sym);
            for (State p2 : lhs.successors(k.p, sym)) {
                for (const auto& m2 : rhs_next) out.push_back({sym, ProductKey{p2, m2, next_phase}});
            }
        }
        return out;
    };
    auto subsumed = [&](const ProductKey& k) {
        if (!prune || !k.m.is_triple()) return false;
        auto it = finished.find({k.p, k.m.n.bits()});
        if (it == finished.end()) return false;
        return std::any_of(it->second.begin(), it->second.end(),
                           [&](StateSet c) { return c.is_subset_of(k.m.c); });
    };
    auto visit = [&](const ProductKey& k) {
        if (nodes.size() >= limit) {
            throw std::length_error("containment product exceeds the state limit of " +
                                    std::to_string(limit));
        }
        const auto v = static_cast<std::uint32_t>(nodes.size());
        ids.emplace(k, v);
        nodes.push_back(k);
        edges.emplace_back();
        index.push_back(next_index);
        low.push_back(next_index);
        ++next_index;
        on_stack.push_back(1);
        stack.push_back(v);
        call.push_back({v, expand(k), 0});
        return v;
    };

    std::vector<std::uint32_t> roots;
    std::vector<ProductKey> root_keys;
    for (State p : lhs.initial()) {
        root_keys.push_back({p, NcbMacrostate::initial_of(table.initial()), 0});
    }
    for (const auto& rk : root_keys) {
        if (ids.count(rk)) continue;
        roots.push_back(visit(rk));
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.pos < f.succ.size()) {
                const auto [sym, key] = f.succ[f.pos++];
                const std::uint32_t v = f.v;
                auto it = ids.find(key);
                if (it != ids.end()) {
                    edges[v].emplace_back(sym, it->second);
                    if (on_stack[it->second]) low[v] = std::min(low[v], index[it->second]);
                    continue;
                }
                if (subsumed(key)) {
                    ++result.pruned;
                    continue;
                }
                const std::uint32_t w = visit(key);
                edges[v].emplace_back(sym, w);
                continue;
            }
            const std::uint32_t done = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[done]);
            if (low[done] != index[done]) continue;

            std::vector<std::uint32_t> members;
            std::uint32_t w = 0;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                members.push_back(w);
            } while (w != done);
            std::vector<char> in_comp(nodes.size(), 0);
            for (auto m : members) in_comp[m] = 1;
            bool cyclic = false;
            bool has_accepting = false;
            for (auto m : members) {
                has_accepting = has_accepting || accepting(m);
                for (auto [sym, t] : edges[m]) cyclic = cyclic || in_comp[t];
            }
            if (cyclic && has_accepting) {
                result.contained = false;
                result.explored = nodes.size();
                result.counterexample = lasso_witness(
                    edges, roots, [&](std::uint32_t x) { return x < in_comp.size() && in_comp[x]; },
                    accepting);
                return result;
            }
            for (auto m : members) {
                const ProductKey& k = nodes[m];
                if (k.m.is_triple()) finished[{k.p, k.m.n.bits()}].push_back(k.m.c);
            }
        }
    }
    result.explored = nodes.size();
    return result;
}

}  // namespace

Nbw complement(const Nbw& a, Method m, std::size_t state_limit, ComplementStats* stats) {
    const Nbw full = prepared_operand(a, m);
    ComplementStats local;
    local.input_states = full.num_states();
    Nbw out;
    if (m == Method::ncb) {
        auto c = complement_ncb(full, state_limit);
        local.initial_count = c.initial_count;
        local.triple_count = c.triple_count;
        out = std::move(c.automaton);
    } else {
        auto c = complement_rank(full, m == Method::kv ? RankVariant::general : RankVariant::fanbw,
                                 state_limit);
        local.max_rank = c.max_rank_used;
        out = std::move(c.automaton);
    }
    local.macrostates = out.num_states();
    if (stats != nullptr) *stats = local;
    return out;
}

ContainmentResult contains(const Nbw& lhs, const Nbw& rhs, Method m, bool prune,
                           std::size_t state_limit) {
    require_same_alphabet(lhs, rhs);
    if (m == Method::ncb) return ncb_containment(lhs, prepared_operand(rhs, m), prune, state_limit);
    const Nbw product = bounded_intersect(lhs, complement(rhs, m, state_limit), state_limit);
    auto verdict = is_empty(product);
    ContainmentResult out;
    out.contained = verdict.empty;
    out.counterexample = std::move(verdict.witness);
    out.explored = product.num_states();
    return out;
}

}  // namespace buchi
