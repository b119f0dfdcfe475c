#include "buchi/codet_dag.hpp"

#include <bit>
#include <stdexcept>

#include "graph.hpp"

namespace buchi {

ReducedTransition::ReducedTransition(const SuccessorTable& table, LevelContext ctx)
    : ctx_(ctx), owned_(table.num_states()) {
    ctx_.level_states.for_each([&](State q) {
        const StateSet fresh = table.of(q, ctx_.symbol) - image_;
        owned_[q] = fresh;
        image_ |= fresh;
    });
}

StateSet ReducedTransition::image(StateSet sub) const {
    if (!sub.is_subset_of(ctx_.level_states)) {
        throw std::invalid_argument("reduced successors: " + sub.to_string() +
                                    " is not a subset of the level " +
                                    ctx_.level_states.to_string());
    }
    return image_unchecked(sub);
}

State ReducedTransition::min_predecessor(State next) const {
    if (next < owned_.size() && image_.contains(next)) {
        State found = 0;
        bool ok = false;
        ctx_.level_states.for_each([&](State q) {
            if (!ok && owned_[q].contains(next)) {
                found = q;
                ok = true;
            }
        });
        if (ok) return found;
    }
    throw std::invalid_argument("state " + std::to_string(next) +
                                " is not a successor of level " + ctx_.level_states.to_string());
}

State min_predecessor(const Nbw& a, const LevelContext& ctx, State next) {
    return ReducedTransition(SuccessorTable(a), ctx).min_predecessor(next);
}

StateSet reduced_successors(const Nbw& a, const LevelContext& ctx, StateSet sub) {
    return ReducedTransition(SuccessorTable(a), ctx).image(sub);
}

CoDetPrefix build_codet_prefix(const Nbw& a, const LassoWord& w, std::size_t depth) {
    validate_lasso(w, a.alphabet_size());
    if (depth == 0) throw std::invalid_argument("prefix depth must be at least 1");
    const SuccessorTable table(a);
    CoDetPrefix out;
    out.levels.push_back(table.initial());
    for (std::size_t l = 0; l < depth; ++l) {
        const ReducedTransition step(table, {out.levels.back(), w.at(l)});
        std::map<State, State> kept;
        out.levels.back().for_each([&](State q) {
            step.owned(q).for_each([&](State next) { kept.emplace(next, q); });
        });
        out.kept_edges.push_back(std::move(kept));
        out.levels.push_back(step.full_image());
    }
    return out;
}

FoldedCoDetDag::FoldedCoDetDag(const Nbw& a, const LassoWord& w) {
    validate_lasso(w, a.alphabet_size());
    const SuccessorTable table(a);
    const std::size_t period_end = w.stem.size() + w.loop.size();
    std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> seen;

    std::size_t position = 0;
    StateSet states = table.initial();
    while (true) {
        auto [it, fresh] = seen.emplace(std::make_pair(position, states.bits()), nodes_.size());
        if (!fresh) {
            loop_start_ = it->second;
            break;
        }
        nodes_.push_back({position, states, w.at(position), vertex_node_.size()});
        states.for_each([&](State q) {
            vertex_node_.push_back(static_cast<std::uint32_t>(nodes_.size() - 1));
            vertex_state_.push_back(q);
            vertex_accepting_.push_back(table.accepting().contains(q) ? 1 : 0);
        });
        states = table.image(states, w.at(position));
        position = position + 1 < period_end ? position + 1 : w.stem.size();
    }

    auto vertex_of = [&](std::size_t node, State q) {
        const std::uint64_t below = nodes_[node].states.bits() & ((std::uint64_t{1} << q) - 1);
        return static_cast<std::uint32_t>(nodes_[node].first_vertex + std::popcount(below));
    };
    children_.resize(vertex_node_.size());
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const std::size_t next = next_node(k);
        const ReducedTransition step(table, {nodes_[k].states, nodes_[k].symbol});
        nodes_[k].states.for_each([&](State q) {
            auto& kids = children_[vertex_of(k, q)];
            step.owned(q).for_each([&](State t) { kids.push_back(vertex_of(next, t)); });
        });
    }
}

std::vector<char> FoldedCoDetDag::infinite_vertices(const std::vector<char>& alive) const {
    const auto scc = detail::strongly_connected_components(children_, alive);
    std::vector<char> on_cycle(children_.size(), 0);
    for (std::size_t v = 0; v < children_.size(); ++v) {
        if (alive[v] && scc.nontrivial[scc.component[v]]) on_cycle[v] = 1;
    }
    return detail::backward_closure(children_, on_cycle, alive);
}

std::size_t FoldedCoDetDag::count_omega_branches() const {
    const std::vector<char> all(children_.size(), 1);
    const auto infinite = infinite_vertices(all);
    const Node& periodic = nodes_[loop_start_];
    std::size_t count = 0;
    for (std::size_t i = 0; i < periodic.states.size(); ++i) {
        if (infinite[periodic.first_vertex + i]) ++count;
    }
    return count;
}

bool FoldedCoDetDag::is_accepting() const {
    const auto scc = detail::strongly_connected_components(children_);
    for (std::size_t v = 0; v < children_.size(); ++v) {
        if (vertex_accepting_[v] && scc.nontrivial[scc.component[v]]) return true;
    }
    return false;
}

std::optional<unsigned> FoldedCoDetDag::peel_stage() const {
    auto none_alive = [](const std::vector<char>& alive) {
        for (char c : alive) {
            if (c) return false;
        }
        return true;
    };
    std::vector<char> alive(children_.size(), 1);
    if (none_alive(alive)) return 0U;

    // Stage 1: drop finite vertices.
    alive = infinite_vertices(alive);
    if (none_alive(alive)) return 1U;

    // Stage 2: drop F-free vertices (no accepting vertex reachable).
    std::vector<char> accepting(children_.size(), 0);
    for (std::size_t v = 0; v < children_.size(); ++v) accepting[v] = alive[v] && vertex_accepting_[v];
    alive = detail::backward_closure(children_, accepting, alive);
    if (none_alive(alive)) return 2U;

    // Stage 3: drop the vertices that became finite.
    alive = infinite_vertices(alive);
    if (none_alive(alive)) return 3U;
    return std::nullopt;
}

std::size_t count_omega_branches(const Nbw& a, const LassoWord& w) {
    return FoldedCoDetDag(a, w).count_omega_branches();
}

bool is_codet_accepting(const Nbw& a, const LassoWord& w) {
    return FoldedCoDetDag(a, w).is_accepting();
}

std::optional<unsigned> peel_stage(const Nbw& a, const LassoWord& w) {
    return FoldedCoDetDag(a, w).peel_stage();
}

}  // namespace buchi
