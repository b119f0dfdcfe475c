#include "buchi/rank_complement.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "buchi/codet_dag.hpp"
#include "explore.hpp"

namespace buchi {

namespace {

StateSet ranks_matching(const LevelRanking& f, int parity) {
    StateSet out;
    for (std::size_t q = 0; q < f.ranks.size(); ++q) {
        if (f.ranks[q] != LevelRanking::kBottom && f.ranks[q] % 2 == parity) {
            out.insert(static_cast<State>(q));
        }
    }
    return out;
}

}  // namespace

StateSet LevelRanking::domain() const {
    StateSet out;
    for (std::size_t q = 0; q < ranks.size(); ++q) {
        if (ranks[q] != kBottom) out.insert(static_cast<State>(q));
    }
    return out;
}

StateSet LevelRanking::odd() const { return ranks_matching(*this, 1); }
StateSet LevelRanking::even() const { return ranks_matching(*this, 0); }

int max_rank_for(RankVariant v, std::size_t num_states) {
    return v == RankVariant::general ? static_cast<int>(2 * num_states) : 2;
}

KvMacrostate initial_kv_macrostate(const Nbw& a, RankVariant v) {
    require_macro_size(a);
    const int top = max_rank_for(v, a.num_states());
    if (top > 126) throw std::invalid_argument("rank bound exceeds the supported range");
    KvMacrostate m;
    m.f.max_rank = top;
    m.f.ranks.assign(a.num_states(), LevelRanking::kBottom);
    for (State q : a.initial()) m.f.ranks[q] = static_cast<std::int8_t>(top);
    return m;
}

namespace {

// Every ranking emitted is a distinct successor, so a product of choices over
// `cap` already overflows any state limit of that size.
std::vector<KvMacrostate> enumerate_rankings(const SuccessorTable& t, const KvMacrostate& m,
                                             Symbol sym, RankVariant v, std::size_t cap) {
    const std::size_t n = t.num_states();
    const StateSet dom = m.f.domain();
    std::vector<int> bound(n, -1);
    StateSet next_dom;
    StateSet o_image;
    if (v == RankVariant::general) {
        dom.for_each([&](State p) {
            t.of(p, sym).for_each([&](State q) {
                bound[q] = bound[q] < 0 ? m.f.ranks[p] : std::min<int>(bound[q], m.f.ranks[p]);
            });
        });
        next_dom = t.image(dom, sym);
        o_image = t.image(m.O, sym);
    } else {
        const ReducedTransition step(t, {dom, sym});
        dom.for_each([&](State p) {
            step.owned(p).for_each([&](State q) { bound[q] = m.f.ranks[p]; });
        });
        next_dom = step.full_image();
        o_image = step.image_unchecked(m.O);
    }

    const std::vector<State> slots = next_dom.to_vector();
    const StateSet accepting = t.accepting();
    auto step_of = [&](State q) { return accepting.contains(q) ? 2 : 1; };
    std::size_t choices = 1;
    for (State q : slots) {
        const auto c = static_cast<std::size_t>(bound[q] / step_of(q) + 1);
        if (choices > cap / c) {
            throw std::length_error("complement exceeds the state limit of " + std::to_string(cap));
        }
        choices *= c;
    }

    KvMacrostate cur;
    cur.f.max_rank = m.f.max_rank;
    cur.f.ranks.assign(n, LevelRanking::kBottom);
    for (State q : slots) cur.f.ranks[q] = 0;

    std::vector<KvMacrostate> out;
    auto emit = [&] {
        KvMacrostate s = cur;
        s.O = m.O.empty() ? s.f.even() : o_image - s.f.odd();
        out.push_back(std::move(s));
    };
    // Odometer over the rank choices; the last slot varies fastest.
    while (true) {
        emit();
        std::size_t i = slots.size();
        while (i > 0) {
            const State q = slots[i - 1];
            const int r = cur.f.ranks[q] + step_of(q);
            if (r <= bound[q]) {
                cur.f.ranks[q] = static_cast<std::int8_t>(r);
                break;
            }
            cur.f.ranks[q] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

}  // namespace

std::vector<KvMacrostate> ranking_successors(const SuccessorTable& t, const KvMacrostate& m,
                                             Symbol sym, RankVariant v) {
    return enumerate_rankings(t, m, sym, v, std::numeric_limits<std::size_t>::max());
}

std::vector<KvMacrostate> ranking_successors(const Nbw& a, const KvMacrostate& m, Symbol sym,
                                             RankVariant v) {
    require_macro_size(a);
    return ranking_successors(SuccessorTable(a), m, sym, v);
}

RankComplement complement_rank(const Nbw& a, RankVariant v, std::size_t state_limit) {
    const SuccessorTable table(a);
    auto explored = detail::explore<KvMacrostate>(
        a.alphabet(), {initial_kv_macrostate(a, v)},
        [&](const KvMacrostate& m, Symbol sym) { return enumerate_rankings(table, m, sym, v, state_limit); },
        [](const KvMacrostate& m) { return m.O.empty(); }, state_limit);
    RankComplement out{std::move(explored.automaton), std::move(explored.states), 0};
    for (const auto& m : out.states) {
        for (auto r : m.f.ranks) out.max_rank_used = std::max<int>(out.max_rank_used, r);
    }
    return out;
}

}  // namespace buchi
