#pragma once

#include <map>
#include <optional>
#include <vector>

#include "buchi/nbw.hpp"

namespace buchi {

/// One level of a run DAG: the states present and the letter read there.
struct LevelContext {
    StateSet level_states;
    Symbol symbol = 0;
};

/// Edge reduction of one DAG level: every successor keeps only the incoming
/// edge from its lowest-index predecessor in the level.
///
/// owned(q) is the set of successors whose kept edge comes from q. These sets
/// are pairwise disjoint and their union is δ(S, a). The reduction depends only
/// on (S, a), never on the position of the level in a word.
class ReducedTransition {
public:
    ReducedTransition(const SuccessorTable& table, LevelContext ctx);

    const LevelContext& context() const { return ctx_; }
    StateSet owned(State q) const { return owned_[q]; }
    StateSet full_image() const { return image_; }

    /// Successors whose kept predecessor lies in `sub`; `sub` must be a
    /// subset of the level. Use `image_unchecked` in hot loops.
    StateSet image(StateSet sub) const;
    StateSet image_unchecked(StateSet sub) const {
        StateSet out;
        sub.for_each([&](State q) { out |= owned_[q]; });
        return out;
    }

    /// Lowest-index level state with `next` among its successors.
    State min_predecessor(State next) const;

private:
    LevelContext ctx_;
    StateSet image_;
    std::vector<StateSet> owned_;
};

State min_predecessor(const Nbw& a, const LevelContext& ctx, State next);
StateSet reduced_successors(const Nbw& a, const LevelContext& ctx, StateSet sub);

/// Finite prefix of the co-deterministic DAG along a word.
struct CoDetPrefix {
    std::vector<StateSet> levels;
    /// kept_edges[l] maps each state of level l+1 to its kept predecessor in level l.
    std::vector<std::map<State, State>> kept_edges;
};

CoDetPrefix build_codet_prefix(const Nbw& a, const LassoWord& w, std::size_t depth);

/// Finite quotient of the co-deterministic DAG over a lasso word.
///
/// Levels are folded on the key (word position, level set); the node sequence
/// is itself a lasso that re-enters at `loop_start`. A vertex is a pair
/// (node, state) and `parent` gives its kept predecessor in the previous node.
/// Infinite paths of the quotient correspond to ω-branches of the DAG.
class FoldedCoDetDag {
public:
    FoldedCoDetDag(const Nbw& a, const LassoWord& w);

    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t loop_start() const { return loop_start_; }
    StateSet node_states(std::size_t node) const { return nodes_[node].states; }
    std::size_t next_node(std::size_t node) const {
        return node + 1 < nodes_.size() ? node + 1 : loop_start_;
    }

    std::size_t num_vertices() const { return vertex_node_.size(); }

    /// Number of ω-branches of the DAG; never exceeds the state count.
    std::size_t count_omega_branches() const;

    /// Some ω-branch visits accepting vertices infinitely often.
    bool is_accepting() const;

    /// Stage at which the finite/F-free peeling sequence first empties the
    /// DAG (0..3), or nullopt if stage 3 is still nonempty.
    std::optional<unsigned> peel_stage() const;

private:
    struct Node {
        std::size_t position;  // index into stem, or stem.size() + loop offset
        StateSet states;
        Symbol symbol;
        std::size_t first_vertex;
    };

    std::vector<char> infinite_vertices(const std::vector<char>& alive) const;

    std::vector<Node> nodes_;
    std::size_t loop_start_ = 0;
    std::vector<std::uint32_t> vertex_node_;
    std::vector<State> vertex_state_;
    std::vector<char> vertex_accepting_;
    std::vector<std::vector<std::uint32_t>> children_;
};

std::size_t count_omega_branches(const Nbw& a, const LassoWord& w);
bool is_codet_accepting(const Nbw& a, const LassoWord& w);
std::optional<unsigned> peel_stage(const Nbw& a, const LassoWord& w);

}  // namespace buchi
