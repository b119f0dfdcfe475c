#include <doctest.h>

#include <map>

#include "buchi/codet_dag.hpp"
#include "buchi/harness.hpp"
#include "buchi/lang_ops.hpp"
#include "buchi/slice_ncb.hpp"
#include "oracles.hpp"

using namespace buchi;
using namespace buchi::testing;

namespace {
const StateSet q0(0b001);
const StateSet q1(0b010);
const StateSet q2(0b100);
const StateSet q12(0b110);
}  // namespace

TEST_CASE("slice successors on the sample") {
    const Nbw a = sample();
    const Slice s0 = initial_slice(a);
    CHECK(s0 == Slice{{q0}, {false}});
    const Slice s1 = slice_successor(s0, 1, a);
    CHECK(s1 == Slice{{q2, q1}, {false, true}});
    const Slice s2 = slice_successor(s1, 1, a);
    CHECK(s2 == Slice{{q1}, {true}});
    CHECK(slice_successor(Slice{}, 0, a) == Slice{});
}

TEST_CASE("slices stay disjoint, short and cover the image") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Nbw a = generate({.n = 2 + seed % 5, .transition_density = 2.0, .seed = seed});
        const SuccessorTable t(a);
        for (const auto& w : all_lassos(2, 2)) {
            Slice s = initial_slice(a);
            StateSet level = t.initial();
            for (std::size_t i = 0; i < 8; ++i) {
                const Slice next = slice_successor(s, w.at(i), t);
                level = t.image(level, w.at(i));
                StateSet uni;
                for (std::size_t j = 0; j < next.sets.size(); ++j) {
                    CHECK_FALSE(next.sets[j].empty());
                    CHECK_FALSE(uni.intersects(next.sets[j]));
                    CHECK(next.f_marked[j] == next.sets[j].is_subset_of(t.accepting()));
                    uni |= next.sets[j];
                }
                CHECK(uni == level);
                CHECK(next.sets.size() <= a.num_states());
                s = next;
            }
        }
    }
}

TEST_CASE("ncb successors on the sample") {
    const Nbw a = complete(sample());
    const auto succ = ncb_successors(a, NcbMacrostate::initial_of(q0), 1);
    REQUIRE(succ.size() == 2);
    CHECK(succ[0] == NcbMacrostate::initial_of(q12));
    CHECK(succ[1] == NcbMacrostate::triple(q12, q1, q1));

    const auto t = ncb_successors(a, NcbMacrostate::triple(q12, q1, q1), 1);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == NcbMacrostate::triple(q1, q1, q1));
    // B never empties along b^w.
    CHECK(ncb_successors(a, t[0], 1) == std::vector<NcbMacrostate>{t[0]});

    const auto loop = ncb_successors(a, NcbMacrostate::triple(q0, {}, {}), 0);
    REQUIRE(loop.size() == 1);
    CHECK(loop[0] == NcbMacrostate::triple(q0, {}, {}));
    CHECK(loop[0].is_accepting());
}

TEST_CASE("triple components use the reduced transition of N") {
    // Level {q1,q2} under b: q1 owns q1, so C = {q2} maps to nothing.
    const Nbw a = complete(sample());
    const auto t = ncb_successors(a, NcbMacrostate::triple(q12, q2, q2), 1);
    REQUIRE(t.size() == 1);
    CHECK(t[0].n == q1);
    CHECK(t[0].c == q1);                    // only N' ∩ F
    CHECK(t[0].b.empty());                  // δᵉ({q2}) = ∅
}

TEST_CASE("one-state automata") {
    CHECK(member(complement_ncb(single_loop(false)).automaton, {{}, {0}}));
    CHECK(is_empty(complement_ncb(single_loop(true)).automaton).empty);
}

TEST_CASE("sample ncb complement agrees with kv-fa") {
    const Nbw a = complete(sample());
    const auto c = complement_ncb(a);
    const Nbw k = complement_rank(a, RankVariant::fanbw).automaton;
    for (const auto& w : all_lassos(2, 3)) {
        CHECK(oracle_member(c.automaton, w) == oracle_member(k, w));
        CHECK(oracle_member(c.automaton, w) != oracle_member(a, w));
    }
    CHECK(c.states.front() == NcbMacrostate::initial_of(q0));
    CHECK(c.initial_count + c.triple_count == c.states.size());
    CHECK(c.states.size() <= ncb_state_bound(4));
}

TEST_CASE("ncb invariants on random finitely ambiguous automata") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const std::size_t n = 1 + seed % 6;
        const Nbw a = generate({.n = n, .seed = seed, .family = Family::fanbw_filtered});
        const auto c = complement_ncb(a);
        CHECK(c.states.size() <= ncb_state_bound(a.num_states()));
        for (State s = 0; s < c.states.size(); ++s) {
            const auto& m = c.states[s];
            CHECK(c.automaton.is_accepting(s) == m.is_accepting());
            if (!m.is_triple()) {
                CHECK(c.automaton.successors(s, 0).size() <= 2);
                continue;
            }
            CHECK(m.b.is_subset_of(m.c));
            CHECK(m.c.is_subset_of(m.n));
            for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
                REQUIRE(c.automaton.successors(s, sym).size() == 1);
                CHECK(c.states[c.automaton.successors(s, sym)[0]].is_triple());
            }
        }
        CHECK(is_empty(intersect(a, c.automaton)).empty);
        for (const auto& w : all_lassos(2, 2)) CHECK(oracle_member(a, w) != oracle_member(c.automaton, w));
    }
}

TEST_CASE("subsumption") {
    const auto m = NcbMacrostate::triple(q12, q1, q1);
    CHECK(subsumes(m, m));
    CHECK(subsumes(m, NcbMacrostate::triple(q12, q12, {})));
    CHECK_FALSE(subsumes(NcbMacrostate::triple(q1, q1, q1), m));
    CHECK_FALSE(subsumes(NcbMacrostate::initial_of(q12), NcbMacrostate::initial_of(q12)));
    CHECK_FALSE(subsumes(NcbMacrostate::triple(q12, q12, {}), m));
}

TEST_CASE("a subsumed macrostate accepts no more words") {
    std::size_t pairs = 0;
    for (std::uint64_t seed = 1; seed <= 40 && pairs < 150; ++seed) {
        const Nbw a = generate({.n = 2 + seed % 4, .seed = seed, .family = Family::fanbw_filtered});
        const auto c = complement_ncb(a);
        for (State i = 0; i < c.states.size(); ++i) {
            for (State j = 0; j < c.states.size(); ++j) {
                if (i == j || !subsumes(c.states[i], c.states[j])) continue;
                ++pairs;
                const Nbw from_i = with_initial(c.automaton, {i});
                const Nbw from_j = with_initial(c.automaton, {j});
                for (const auto& w : all_lassos(2, 2)) {
                    if (oracle_member(from_j, w)) CHECK(oracle_member(from_i, w));
                }
            }
        }
    }
    CHECK(pairs > 0);
}

TEST_CASE("to_string") {
    CHECK(to_string(NcbMacrostate::initial_of(q0)) == "I{0}");
    CHECK(to_string(NcbMacrostate::triple(q12, q1, {})) == "({1,2},{1},{})");
}
