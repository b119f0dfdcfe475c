#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "buchi/nbw.hpp"
#include "buchi/rank_complement.hpp"

namespace buchi {

/// Raised when a construction that needs a finitely ambiguous automaton
/// gets one that is not.
class NotFinitelyAmbiguous : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Product with a phase bit: phase 0 waits for an accepting state of `a`,
/// phase 1 for one of `b`. Accepting states are (p, q, 0) with p accepting
/// in `a`. Only reachable states are built, numbered in discovery order.
/// Throws std::invalid_argument when the alphabets differ.
Nbw intersect(const Nbw& a, const Nbw& b);

struct EmptinessResult {
    bool empty = true;
    std::optional<LassoWord> witness;  // present iff !empty
};

/// Accepting-SCC reachability. The witness has a shortest stem to the first
/// reachable accepting state on a cycle and a shortest loop through it.
EmptinessResult is_empty(const Nbw& a);

/// stem · loop^ω ∈ L(a), via the product with the word's lasso automaton.
bool member(const Nbw& a, const LassoWord& w);

/// The automaton accepting exactly the single lasso word `w`.
Nbw lasso_automaton(const std::vector<std::string>& alphabet, const LassoWord& w);

enum class Method { kv, kv_fa, ncb };

Method parse_method(std::string_view name);
std::string_view method_name(Method m);
bool needs_finite_ambiguity(Method m);

struct ComplementStats {
    std::size_t input_states = 0;   // after completion
    std::size_t macrostates = 0;
    int max_rank = -1;              // kv and kv-fa
    std::size_t initial_count = 0;  // ncb
    std::size_t triple_count = 0;   // ncb
};

/// Complements `a` (completing it first). kv-fa and ncb verify finite
/// ambiguity and throw NotFinitelyAmbiguous otherwise.
Nbw complement(const Nbw& a, Method m, std::size_t state_limit = kDefaultStateLimit,
               ComplementStats* stats = nullptr);

struct ContainmentResult {
    bool contained = true;
    std::optional<LassoWord> counterexample;  // in L(lhs) \ L(rhs)
    std::size_t explored = 0;                 // product states visited
    std::size_t pruned = 0;                   // product states skipped by subsumption
};

/// L(lhs) ⊆ L(rhs), decided by emptiness of L(lhs) ∩ L(complement(rhs)).
/// The ncb method explores the product on the fly and stops at the first
/// accepting component. With `prune`, a product state (p, m') is skipped
/// when a finished state (p, m) with m subsuming m' is already known empty.
/// `state_limit` bounds the complement; for kv and kv-fa it also bounds the
/// materialized product, which may hold 64 edges per allowed state.
ContainmentResult contains(const Nbw& lhs, const Nbw& rhs, Method m, bool prune = true,
                           std::size_t state_limit = kDefaultStateLimit);

}  // namespace buchi
