#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "buchi/nbw.hpp"

namespace buchi {

/// Level ranking f: Q -> {0..max_rank} ∪ {⊥}. Accepting states get even ranks.
struct LevelRanking {
    static constexpr std::int8_t kBottom = -1;

    std::vector<std::int8_t> ranks;
    int max_rank = 0;

    StateSet domain() const;
    StateSet odd() const;
    StateSet even() const;

    bool operator==(const LevelRanking&) const = default;
};

/// Macrostate (f, O) of the rank-based complement. O holds even-ranked
/// states whose runs still owe a visit to an odd rank.
struct KvMacrostate {
    LevelRanking f;
    StateSet O;

    bool operator==(const KvMacrostate&) const = default;
};

enum class RankVariant {
    general,  // max rank 2n, bound by every predecessor, full transition
    fanbw,    // max rank 2, bound by the kept predecessor, reduced transition
};

int max_rank_for(RankVariant v, std::size_t num_states);

KvMacrostate initial_kv_macrostate(const Nbw& a, RankVariant v);

/// All macrostates covering `m` under `sym`, in lexicographic order of the
/// rank vector (lowest state most significant, lower ranks first).
std::vector<KvMacrostate> ranking_successors(const SuccessorTable& t, const KvMacrostate& m,
                                             Symbol sym, RankVariant v);
std::vector<KvMacrostate> ranking_successors(const Nbw& a, const KvMacrostate& m, Symbol sym,
                                             RankVariant v);

struct RankComplement {
    Nbw automaton;
    std::vector<KvMacrostate> states;  // states[i] is automaton state i
    int max_rank_used = 0;
};

inline constexpr std::size_t kDefaultStateLimit = std::size_t{1} << 20;

/// Reachable part of the rank-based complement of a complete automaton.
/// The fanbw variant is only correct on finitely ambiguous input; that is
/// the caller's check. Throws std::length_error past `state_limit` states.
RankComplement complement_rank(const Nbw& a, RankVariant v,
                               std::size_t state_limit = kDefaultStateLimit);

}  // namespace buchi

template <>
struct std::hash<buchi::KvMacrostate> {
    std::size_t operator()(const buchi::KvMacrostate& m) const noexcept {
        std::uint64_t h = m.O.bits() * 0x9e3779b97f4a7c15ULL;
        for (auto r : m.f.ranks) h = (h ^ static_cast<std::uint8_t>(r)) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};
