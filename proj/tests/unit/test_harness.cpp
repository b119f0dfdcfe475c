#include <doctest.h>

#include <json.hpp>

#include "buchi/ambiguity.hpp"
#include "buchi/harness.hpp"
#include "oracles.hpp"

using namespace buchi;
using namespace buchi::testing;

TEST_CASE("splitmix64 reference values") {
    // First outputs for seed 0 from the published reference implementation.
    SplitMix64 r(0);
    CHECK(r.next() == 0xe220a8397b1dcdafULL);
    CHECK(r.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(r.next() == 0x06c45d188009454fULL);
    SplitMix64 u(42);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("generation is a pure function of the config") {
    for (auto f : {Family::general, Family::reverse_deterministic, Family::fanbw_filtered}) {
        const GenConfig cfg{.n = 5, .seed = 1234, .family = f};
        CHECK(generate(cfg) == generate(cfg));
        CHECK(generate(cfg).is_complete());
    }
    CHECK_FALSE(generate({.n = 5, .seed = 1}) == generate({.n = 5, .seed = 2}));
}

TEST_CASE("reverse-deterministic family has at most one predecessor per letter") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const GenConfig cfg{.n = 1 + seed % 6, .transition_density = 1.0, .seed = seed,
                            .family = Family::reverse_deterministic};
        const Nbw a = generate(cfg);
        // The sink, if any, is the last state; only it may have many predecessors.
        const std::size_t core = cfg.n;
        for (Symbol s = 0; s < a.alphabet_size(); ++s) {
            std::vector<int> preds(a.num_states(), 0);
            for (State p = 0; p < core; ++p) {
                for (State q : a.successors(p, s)) ++preds[q];
            }
            for (State q = 0; q < core; ++q) CHECK(preds[q] <= 1);
        }
        CHECK(is_finitely_ambiguous(a).finitely_ambiguous);
    }
}

TEST_CASE("fanbw-filtered family") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        CHECK(is_finitely_ambiguous(generate({.n = 5, .seed = seed, .family = Family::fanbw_filtered}))
                  .finitely_ambiguous);
    }
    // Every state accepting with a dense relation is never finitely ambiguous.
    GenConfig hopeless{.n = 3, .alphabet_size = 1, .transition_density = 50, .accepting_fraction = 1.0,
                       .seed = 1, .family = Family::fanbw_filtered, .max_retries = 5};
    CHECK_THROWS_AS(generate(hopeless), std::runtime_error);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(generate({.n = 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate({.n = 2, .transition_density = 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate({.n = 2, .accepting_fraction = 1.5}), std::invalid_argument);
    CHECK(parse_family("fanbw-filtered") == Family::fanbw_filtered);
    CHECK_THROWS(parse_family("random"));
}

TEST_CASE("lasso enumeration") {
    const auto l = enumerate_lassos(2, 3);
    CHECK(l.size() == 15 * 14);
    CHECK(l.front() == LassoWord{{}, {0}});
    CHECK(l.size() == all_lassos(2, 3).size());
}

TEST_CASE("sample cross-validation is clean") {
    const auto r = cross_validate(sample(), {Method::kv, Method::kv_fa, Method::ncb}, 3);
    CHECK(r.ok());
    CHECK(r.finitely_ambiguous);
    CHECK(r.lassos == 210);
    REQUIRE(r.methods.size() == 3);
    for (const auto& m : r.methods) {
        CHECK(m.built);
        CHECK(m.disjoint);
    }
    const auto j = nlohmann::json::parse(report_to_json(r));
    CHECK(j["ok"] == true);
    CHECK(j["methods"].size() == 3);
}

TEST_CASE("empty language: every complement is universal on the sampled lassos") {
    const auto r = cross_validate(single_loop(false), {Method::kv, Method::kv_fa, Method::ncb}, 3);
    CHECK(r.ok());
}

TEST_CASE("ambiguity-dependent methods are skipped on other inputs") {
    const auto r = cross_validate(two_loop(), {Method::kv, Method::ncb}, 2);
    CHECK_FALSE(r.finitely_ambiguous);
    CHECK(r.methods[0].built);
    CHECK_FALSE(r.methods[1].built);
    CHECK(r.ok());
}

TEST_CASE("a wrong complement is reported") {
    // Feed the checks a non-complement by validating a universal automaton
    // against itself through the report's own invariant: every lasso must be in
    // exactly one of the two languages.
    const Nbw a = single_loop(true);
    const auto r = cross_validate(a, {Method::ncb}, 2);
    CHECK(r.ok());
    CHECK(r.methods[0].macrostates > 0);
}

TEST_CASE("state limits are reported, not thrown") {
    const Nbw g = generate({.n = 4, .transition_density = 2.5, .seed = 4});
    const auto r = cross_validate(g, {Method::kv}, 1, 50);
    CHECK_FALSE(r.methods[0].built);
    CHECK_FALSE(r.methods[0].skipped_reason.empty());
    const auto j = nlohmann::json::parse(report_to_json(r));
    CHECK(j["methods"][0]["built"] == false);
}
