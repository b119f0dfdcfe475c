#include "buchi/harness.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include <json.hpp>

#include "buchi/ambiguity.hpp"
#include "buchi/codet_dag.hpp"
#include "buchi/rank_complement.hpp"
#include "buchi/slice_ncb.hpp"

namespace buchi {

Family parse_family(std::string_view name) {
    if (name == "general") return Family::general;
    if (name == "reverse-deterministic") return Family::reverse_deterministic;
    if (name == "fanbw-filtered") return Family::fanbw_filtered;
    throw std::invalid_argument("unknown family '" + std::string(name) +
                                "' (expected general, reverse-deterministic or fanbw-filtered)");
}

std::string_view family_name(Family f) {
    switch (f) {
        case Family::general: return "general";
        case Family::reverse_deterministic: return "reverse-deterministic";
        case Family::fanbw_filtered: return "fanbw-filtered";
    }
    return "?";
}

std::vector<std::string> default_alphabet(std::size_t size) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size; ++i) {
        out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
    }
    return out;
}

namespace {

void mark_accepting(Nbw& a, SplitMix64& rng, double fraction) {
    for (State s = 0; s < a.num_states(); ++s) {
        if (rng.uniform() < fraction) a.set_accepting(s);
    }
}

Nbw generate_general(const GenConfig& cfg, SplitMix64 rng) {
    Nbw a(cfg.n, default_alphabet(cfg.alphabet_size));
    a.add_initial(0);
    const double p = std::min(1.0, cfg.transition_density / static_cast<double>(cfg.n));
    for (State s = 0; s < cfg.n; ++s) {
        for (Symbol sym = 0; sym < cfg.alphabet_size; ++sym) {
            for (State t = 0; t < cfg.n; ++t) {
                if (rng.uniform() < p) a.add_transition(s, sym, t);
            }
        }
    }
    mark_accepting(a, rng, cfg.accepting_fraction);
    return a;
}

/// Each (target, symbol) gets at most one predecessor.
Nbw generate_reverse_deterministic(const GenConfig& cfg, SplitMix64 rng) {
    Nbw a(cfg.n, default_alphabet(cfg.alphabet_size));
    a.add_initial(0);
    const double p = std::min(1.0, cfg.transition_density);
    for (State t = 0; t < cfg.n; ++t) {
        for (Symbol sym = 0; sym < cfg.alphabet_size; ++sym) {
            if (rng.uniform() < p) a.add_transition(static_cast<State>(rng.below(cfg.n)), sym, t);
        }
    }
    mark_accepting(a, rng, cfg.accepting_fraction);
    return a;
}

}  // namespace

Nbw generate(const GenConfig& cfg) {
    if (cfg.n == 0) throw std::invalid_argument("n must be at least 1");
    if (cfg.alphabet_size == 0) throw std::invalid_argument("alphabet must be nonempty");
    if (!(cfg.transition_density > 0)) throw std::invalid_argument("transition density must be positive");
    if (!(cfg.accepting_fraction >= 0 && cfg.accepting_fraction <= 1)) {
        throw std::invalid_argument("accepting fraction must lie in [0, 1]");
    }
    SplitMix64 rng(cfg.seed);
    switch (cfg.family) {
        case Family::general: return complete(generate_general(cfg, rng.split()));
        case Family::reverse_deterministic:
            return complete(generate_reverse_deterministic(cfg, rng.split()));
        case Family::fanbw_filtered:
            for (std::size_t attempt = 0; attempt < cfg.max_retries; ++attempt) {
                Nbw a = complete(generate_general(cfg, rng.split()));
                if (is_finitely_ambiguous(a).finitely_ambiguous) return a;
            }
            throw std::runtime_error("no finitely ambiguous automaton after " +
                                     std::to_string(cfg.max_retries) + " attempts (seed " +
                                     std::to_string(cfg.seed) + ")");
    }
    throw std::logic_error("unreachable");
}

std::vector<LassoWord> enumerate_lassos(std::size_t alphabet_size, std::size_t bound) {
    auto words_of = [&](std::size_t len) {
        std::vector<std::vector<Symbol>> out;
        std::vector<Symbol> w(len, 0);
        while (true) {
            out.push_back(w);
            std::size_t i = len;
            while (i > 0 && w[i - 1] + 1 == alphabet_size) w[--i] = 0;
            if (i == 0) break;
            ++w[i - 1];
        }
        return out;
    };
    std::vector<LassoWord> out;
    for (std::size_t s = 0; s <= bound; ++s) {
        for (std::size_t l = 1; l <= bound; ++l) {
            for (const auto& stem : words_of(s)) {
                for (const auto& loop : words_of(l)) out.push_back({stem, loop});
            }
        }
    }
    return out;
}

namespace {

std::size_t saturating_pow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (out > std::numeric_limits<std::size_t>::max() / base) return std::numeric_limits<std::size_t>::max();
        out *= base;
    }
    return out;
}

}  // namespace

ValidationReport cross_validate(const Nbw& input, const std::vector<Method>& methods,
                                std::size_t lasso_bound, std::size_t state_limit) {
    const Nbw a = complete(input);
    require_macro_size(a);
    const std::size_t n = a.num_states();
    ValidationReport report;
    report.num_states = n;
    report.finitely_ambiguous = is_finitely_ambiguous(a).finitely_ambiguous;
    auto violation = [&](std::string what) { report.violations.push_back(std::move(what)); };

    std::vector<std::optional<Nbw>> complements;
    for (Method m : methods) {
        MethodStats st;
        st.method = m;
        std::optional<Nbw> built;
        const std::string name(method_name(m));
        if (needs_finite_ambiguity(m) && !report.finitely_ambiguous) {
            st.skipped_reason = "not finitely ambiguous";
        } else {
            try {
                if (m == Method::ncb) {
                    auto c = complement_ncb(a, state_limit);
                    st.initial_count = c.initial_count;
                    st.triple_count = c.triple_count;
                    if (c.states.size() > ncb_state_bound(n)) violation(name + ": macrostate count above 2^n + 4^n");
                    for (State s = 0; s < c.states.size(); ++s) {
                        const auto& ms = c.states[s];
                        if (!ms.is_triple()) continue;
                        if (!ms.b.is_subset_of(ms.c) || !ms.c.is_subset_of(ms.n)) {
                            violation(name + ": triple " + to_string(ms) + " breaks B <= C <= N");
                        }
                        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
                            if (c.automaton.successors(s, sym).size() != 1) {
                                violation(name + ": triple " + to_string(ms) + " is not deterministic");
                            }
                        }
                    }
                    built = std::move(c.automaton);
                } else {
                    const auto variant = m == Method::kv ? RankVariant::general : RankVariant::fanbw;
                    auto c = complement_rank(a, variant, state_limit);
                    st.max_rank = c.max_rank_used;
                    if (m == Method::kv_fa) {
                        if (c.max_rank_used > 2) violation(name + ": rank above 2");
                        if (c.states.size() > saturating_pow(8, n)) violation(name + ": macrostate count above 8^n");
                    }
                    built = std::move(c.automaton);
                }
                st.built = true;
                st.macrostates = built->num_states();
                st.disjoint = is_empty(intersect(a, *built)).empty;
                if (!st.disjoint) violation(name + ": complement intersects the input");
            } catch (const std::length_error& e) {
                st.skipped_reason = e.what();
            }
        }
        report.methods.push_back(std::move(st));
        complements.push_back(std::move(built));
    }

    const auto lassos = enumerate_lassos(a.alphabet_size(), lasso_bound);
    report.lassos = lassos.size();
    for (const auto& w : lassos) {
        const bool in_a = member(a, w);
        std::optional<bool> first;
        for (std::size_t i = 0; i < methods.size(); ++i) {
            if (!complements[i]) continue;
            const bool in_c = member(*complements[i], w);
            const std::string name(method_name(methods[i]));
            if (in_a == in_c) {
                violation(name + ": " + format_lasso(a, w) + (in_a ? " in both" : " in neither"));
            }
            if (first && *first != in_c) violation(name + ": disagrees with another method on " + format_lasso(a, w));
            if (!first) first = in_c;
        }
        if (report.finitely_ambiguous) {
            const FoldedCoDetDag dag(a, w);
            if (dag.count_omega_branches() > n) violation("more omega-branches than states on " + format_lasso(a, w));
            const bool peeled = dag.peel_stage().has_value();
            if (peeled == in_a) {
                violation(std::string("peel stage ") + (peeled ? "<= 3 on an accepted" : "> 3 on a rejected") +
                          " word " + format_lasso(a, w));
            }
        }
    }
    return report;
}

std::string report_to_json(const ValidationReport& r, const GenConfig* cfg) {
    nlohmann::ordered_json j;
    if (cfg != nullptr) {
        j["seed"] = cfg->seed;
        j["family"] = family_name(cfg->family);
        j["n"] = cfg->n;
        j["alphabet_size"] = cfg->alphabet_size;
    }
    j["states"] = r.num_states;
    j["finitely_ambiguous"] = r.finitely_ambiguous;
    j["lassos"] = r.lassos;
    auto& ms = j["methods"] = nlohmann::ordered_json::array();
    for (const auto& m : r.methods) {
        nlohmann::ordered_json e;
        e["method"] = method_name(m.method);
        e["built"] = m.built;
        if (!m.built) e["skipped"] = m.skipped_reason;
        e["macrostates"] = m.macrostates;
        if (m.max_rank >= 0) e["max_rank"] = m.max_rank;
        if (m.method == Method::ncb && m.built) {
            e["initial"] = m.initial_count;
            e["triples"] = m.triple_count;
        }
        if (m.built) e["disjoint"] = m.disjoint;
        ms.push_back(std::move(e));
    }
    j["violations"] = r.violations;
    j["ok"] = r.ok();
    return j.dump();
}

}  // namespace buchi
