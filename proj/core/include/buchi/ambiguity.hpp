#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "buchi/nbw.hpp"

namespace buchi {

/// Why an automaton has infinitely many accepting runs on some word.
///
/// two_cycles: `state` has two distinct runs state -word-> state and one of
/// them visits an accepting state, so u·word^ω has uncountably many accepting
/// runs.
/// cycle_and_escape: `state` loops on `word`, also reaches `target` on `word`,
/// and `target` loops on `word` through an accepting state. Then
/// u·word^ω (u reaching `state`) has one accepting run per escape point.
struct AmbiguityWitness {
    enum class Kind { two_cycles, cycle_and_escape };
    Kind kind = Kind::two_cycles;
    State state = 0;
    State target = 0;
    std::vector<Symbol> word;
};

struct AmbiguityVerdict {
    bool finitely_ambiguous = true;
    std::optional<AmbiguityWitness> witness;  // present iff !finitely_ambiguous
};

/// Decides whether every word has finitely many accepting runs.
///
/// Runs in polynomial time on the reachable part: a pair product with a
/// divergence flag finds two distinct returning runs through an accepting
/// cycle, and a triple product finds a loop that can escape into an
/// accepting loop on the same word. Witness words are shortest per candidate.
AmbiguityVerdict is_finitely_ambiguous(const Nbw& a);

/// Number of run prefixes with `length` states (length-1 letters) over `w`
/// that extend to accepting runs. Saturates at UINT64_MAX.
std::uint64_t count_accepting_run_prefixes(const Nbw& a, const LassoWord& w, std::size_t length);

}  // namespace buchi
