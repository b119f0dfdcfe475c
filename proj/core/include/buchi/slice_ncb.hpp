#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "buchi/nbw.hpp"
#include "buchi/rank_complement.hpp"

namespace buchi {

/// One level of the slice DAG: disjoint nonempty sets, left to right.
struct Slice {
    std::vector<StateSet> sets;
    std::vector<bool> f_marked;  // sets[j] ⊆ F

    bool operator==(const Slice&) const = default;
};

/// Level 0: (I \ F, I ∩ F) with empty sets dropped.
Slice initial_slice(const Nbw& a);

/// Splits every set into its non-accepting and accepting successors, keeps
/// only the rightmost occurrence of each state and drops empty sets.
Slice slice_successor(const Slice& s, Symbol sym, const Nbw& a);
Slice slice_successor(const Slice& s, Symbol sym, const SuccessorTable& t);

/// Either Initial(S) before the guess or Triple(N, C, B) after it.
/// For Initial states only `n` is used and `c`, `b` stay empty.
struct NcbMacrostate {
    enum class Kind : unsigned char { initial, triple };
    Kind kind = Kind::initial;
    StateSet n;
    StateSet c;
    StateSet b;

    static NcbMacrostate initial_of(StateSet s) { return {Kind::initial, s, {}, {}}; }
    static NcbMacrostate triple(StateSet n, StateSet c, StateSet b) {
        return {Kind::triple, n, c, b};
    }
    bool is_triple() const { return kind == Kind::triple; }
    bool is_accepting() const { return is_triple() && b.empty(); }

    bool operator==(const NcbMacrostate&) const = default;
};

std::string to_string(const NcbMacrostate& m);

/// Initial(S) yields Initial(δ(S)) followed by the guess successor; a
/// Triple yields exactly one Triple.
std::vector<NcbMacrostate> ncb_successors(const SuccessorTable& t, const NcbMacrostate& m,
                                          Symbol sym);
std::vector<NcbMacrostate> ncb_successors(const Nbw& a, const NcbMacrostate& m, Symbol sym);

struct NcbComplement {
    Nbw automaton;
    std::vector<NcbMacrostate> states;  // states[i] is automaton state i
    std::size_t initial_count = 0;
    std::size_t triple_count = 0;
};

/// 2^n + 4^n, saturating.
std::size_t ncb_state_bound(std::size_t n);

/// Reachable part of the (N, C, B) complement. The input must be complete
/// and finitely ambiguous; neither is re-checked here.
NcbComplement complement_ncb(const Nbw& a, std::size_t state_limit = kDefaultStateLimit);

/// m and m2 are Triples with the same N and m.C ⊆ m2.C. The language from m2
/// is then contained in the language from m.
bool subsumes(const NcbMacrostate& m, const NcbMacrostate& m2);

}  // namespace buchi

template <>
struct std::hash<buchi::NcbMacrostate> {
    std::size_t operator()(const buchi::NcbMacrostate& m) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(m.kind) + 0x9e3779b97f4a7c15ULL;
        for (auto part : {m.n.bits(), m.c.bits(), m.b.bits()}) {
            h ^= part + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};
