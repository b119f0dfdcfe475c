#include <doctest.h>

#include "buchi/ambiguity.hpp"
#include "buchi/harness.hpp"
#include "oracles.hpp"

using namespace buchi;
using namespace buchi::testing;

namespace {

/// Number of runs from p to q over `word` (no acceptance condition).
std::uint64_t runs_between(const Nbw& a, State p, State q, const std::vector<Symbol>& word) {
    std::vector<std::uint64_t> cnt(a.num_states(), 0);
    cnt[p] = 1;
    for (Symbol s : word) {
        std::vector<std::uint64_t> next(a.num_states(), 0);
        for (State x = 0; x < a.num_states(); ++x) {
            for (State y : a.successors(x, s)) next[y] += cnt[x];
        }
        cnt = std::move(next);
    }
    return cnt[q];
}

/// Shortest stem from an initial state to q, by breadth-first search.
std::vector<Symbol> stem_to(const Nbw& a, State q) {
    std::vector<std::optional<std::vector<Symbol>>> path(a.num_states());
    std::vector<State> frontier;
    for (State i : a.initial()) {
        path[i] = std::vector<Symbol>{};
        frontier.push_back(i);
    }
    for (std::size_t h = 0; h < frontier.size(); ++h) {
        const State x = frontier[h];
        for (Symbol s = 0; s < a.alphabet_size(); ++s) {
            for (State y : a.successors(x, s)) {
                if (path[y]) continue;
                path[y] = *path[x];
                path[y]->push_back(s);
                frontier.push_back(y);
            }
        }
    }
    REQUIRE(path[q].has_value());
    return *path[q];
}

}  // namespace

TEST_CASE("sample is finitely ambiguous with two accepting runs on b^w") {
    CHECK(is_finitely_ambiguous(sample()).finitely_ambiguous);
    CHECK_FALSE(is_finitely_ambiguous(sample()).witness.has_value());
    CHECK(count_accepting_run_prefixes(sample(), {{}, {1}}, 4) == 2);
    for (std::size_t len = 1; len <= 8; ++len) {
        CHECK(count_accepting_run_prefixes(sample(), {{0, 0}, {1}}, len) ==
              oracle_run_prefixes(sample(), {{0, 0}, {1}}, len));
    }
}

TEST_CASE("deterministic automata are finitely ambiguous") {
    CHECK(is_finitely_ambiguous(single_loop(true)).finitely_ambiguous);
    CHECK(is_finitely_ambiguous(single_loop(false)).finitely_ambiguous);
}

TEST_CASE("two distinct returning runs on an accepting cycle") {
    const auto v = is_finitely_ambiguous(two_loop());
    CHECK_FALSE(v.finitely_ambiguous);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == AmbiguityWitness::Kind::two_cycles);
    CHECK(v.witness->state == 0);
    CHECK(v.witness->word == std::vector<Symbol>{0, 0});
    const LassoWord aw{{}, {0}};
    CHECK(count_accepting_run_prefixes(two_loop(), aw, 2) < count_accepting_run_prefixes(two_loop(), aw, 4));
    CHECK(count_accepting_run_prefixes(two_loop(), aw, 4) < count_accepting_run_prefixes(two_loop(), aw, 6));
}

TEST_CASE("a loop escaping into an accepting loop is infinitely ambiguous") {
    // q -a-> {q, f}, f -a-> f: a^w has one accepting run per escape point.
    const auto v = is_finitely_ambiguous(escape_loop());
    CHECK_FALSE(v.finitely_ambiguous);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->kind == AmbiguityWitness::Kind::cycle_and_escape);
    CHECK(v.witness->state == 0);
    CHECK(v.witness->target == 1);
    CHECK(count_accepting_run_prefixes(escape_loop(), {{}, {0}}, 10) == 10);
}

TEST_CASE("two ambiguous loops away from accepting states stay finite") {
    // q0 has two a-loops through q1 and q2 but no accepting state on them;
    // once q3 is entered the run is unique.
    const Nbw a = parse_nbw(
        "nbw\nstates: 4\nalphabet: a b\ninitial: 0\naccepting: 3\n"
        "trans: 0 a 1 2\ntrans: 1 a 0\ntrans: 2 a 0\ntrans: 0 b 3\ntrans: 3 b 3\n");
    CHECK(is_finitely_ambiguous(a).finitely_ambiguous);
}

TEST_CASE("unreachable ambiguity is ignored") {
    Nbw b(3, {"a"});
    b.add_initial(2);
    b.add_transition(0, 0, 0);
    b.add_transition(0, 0, 1);
    b.add_transition(1, 0, 0);
    b.set_accepting(0);
    b.add_transition(2, 0, 2);
    b.set_accepting(2);
    CHECK(is_finitely_ambiguous(b).finitely_ambiguous);
}

TEST_CASE("witnesses are genuine") {
    std::size_t infinite = 0;
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const Nbw a = generate({.n = 1 + seed % 5, .transition_density = 1.8, .seed = seed});
        const auto v = is_finitely_ambiguous(a);
        if (v.finitely_ambiguous) continue;
        ++infinite;
        const auto& w = *v.witness;
        REQUIRE_FALSE(w.word.empty());
        const LassoWord lasso{stem_to(a, w.state), w.word};
        if (w.kind == AmbiguityWitness::Kind::two_cycles) {
            CHECK(runs_between(a, w.state, w.state, w.word) >= 2);
        } else {
            CHECK(runs_between(a, w.state, w.state, w.word) >= 1);
            CHECK(runs_between(a, w.state, w.target, w.word) >= 1);
            CHECK(runs_between(a, w.target, w.target, w.word) >= 1);
        }
        // Run prefix counts keep growing along the witness lasso.
        const std::size_t base = lasso.stem.size() + 1;
        const std::size_t k = w.word.size();
        const auto c1 = count_accepting_run_prefixes(a, lasso, base + 4 * k);
        const auto c2 = count_accepting_run_prefixes(a, lasso, base + 8 * k);
        CHECK(c1 < c2);
        CHECK(oracle_member(a, lasso));
    }
    CHECK(infinite > 0);
}

TEST_CASE("finitely ambiguous automata have bounded run counts") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const Nbw a = generate({.n = 1 + seed % 4, .transition_density = 1.8, .seed = seed});
        if (!is_finitely_ambiguous(a).finitely_ambiguous) continue;
        for (const auto& w : all_lassos(2, 2)) {
            CHECK(count_accepting_run_prefixes(a, w, 40) <= 64);
        }
    }
}

TEST_CASE("run prefix counting matches explicit enumeration") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Nbw a = generate({.n = 1 + seed % 4, .transition_density = 1.6, .seed = seed});
        for (const auto& w : all_lassos(2, 2)) {
            for (std::size_t len : {1, 3, 6}) {
                CHECK(count_accepting_run_prefixes(a, w, len) == oracle_run_prefixes(a, w, len));
            }
        }
    }
}

TEST_CASE("run prefix counts vanish on rejected words and never decrease") {
    CHECK(count_accepting_run_prefixes(complete(sample()), {{}, {0}}, 9) == 0);
    CHECK(count_accepting_run_prefixes(sample(), {{}, {1}}, 0) == 0);
    const Nbw a = generate({.n = 4, .transition_density = 2.0, .seed = 77});
    for (const auto& w : all_lassos(2, 2)) {
        std::uint64_t prev = 0;
        for (std::size_t len = 1; len < 20; ++len) {
            const auto c = count_accepting_run_prefixes(a, w, len);
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("reverse-deterministic automata are finitely ambiguous") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Nbw a = generate({.n = 1 + seed % 6, .transition_density = 1.0, .seed = seed,
                                .family = Family::reverse_deterministic});
        CHECK(is_finitely_ambiguous(a).finitely_ambiguous);
    }
}
