#pragma once

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "buchi/nbw.hpp"

namespace buchi::detail {

template <typename M>
struct Explored {
    Nbw automaton;
    std::vector<M> states;
};

/// Worklist construction of the reachable part of a macrostate automaton.
/// States are numbered in discovery order (breadth-first, symbols ascending,
/// successors in the order `succ` returns them).
template <typename M, typename Succ, typename Accepting>
Explored<M> explore(const std::vector<std::string>& alphabet, const std::vector<M>& initial,
                    Succ&& succ, Accepting&& accepting, std::size_t state_limit) {
    Explored<M> out;
    out.automaton = Nbw(0, alphabet);
    std::unordered_map<M, State> index;
    std::deque<State> queue;
    auto intern = [&](const M& m) {
        auto [it, fresh] = index.emplace(m, static_cast<State>(out.states.size()));
        if (fresh) {
            if (out.states.size() >= state_limit) {
                throw std::length_error("complement exceeds the state limit of " +
                                        std::to_string(state_limit));
            }
            out.states.push_back(m);
            out.automaton.add_state(accepting(m));
            queue.push_back(it->second);
        }
        return it->second;
    };
    for (const M& m : initial) out.automaton.add_initial(intern(m));
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        for (Symbol sym = 0; sym < alphabet.size(); ++sym) {
            std::vector<State> targets;
            for (const M& next : succ(out.states[s], sym)) targets.push_back(intern(next));
            out.automaton.set_successors(s, sym, std::move(targets));
        }
    }
    return out;
}

}  // namespace buchi::detail
