#include "cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "buchi/ambiguity.hpp"
#include "buchi/codet_dag.hpp"
#include "buchi/harness.hpp"
#include "buchi/lang_ops.hpp"
#include "buchi/slice_ncb.hpp"

namespace buchi::cli {

namespace {

std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_method(item));
    }
    if (out.empty()) throw std::invalid_argument("no methods given");
    return out;
}

LassoWord read_lasso(const Nbw& a, const std::string& stem, const std::string& loop) {
    LassoWord w{parse_symbols(a, stem), parse_symbols(a, loop)};
    validate_lasso(w, a.alphabet_size());
    return w;
}

std::string describe(const Nbw& a, const AmbiguityWitness& w) {
    std::ostringstream os;
    if (w.kind == AmbiguityWitness::Kind::two_cycles) {
        os << "state " << w.state << " has two distinct accepting-cycle runs on '"
           << format_symbols(a, w.word) << "'";
    } else {
        os << "state " << w.state << " loops on '" << format_symbols(a, w.word)
           << "' and escapes on it to the accepting loop at state " << w.target;
    }
    return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Complementation and containment for finitely ambiguous Buchi automata", "buchi"};
    app.require_subcommand(1);
    int code = kExitTrue;

    std::string in_path, out_path, method_text = "ncb", stem, loop, lhs_path, rhs_path;
    bool stats = false;
    bool no_prune = false;
    std::size_t state_limit = kDefaultStateLimit;

    auto* complement_cmd = app.add_subcommand("complement", "Write the complement of an automaton");
    complement_cmd->add_option("--method", method_text, "kv, kv-fa or ncb")->required();
    complement_cmd->add_option("--in", in_path, "Input automaton")->required();
    complement_cmd->add_option("--out", out_path, "Output file")->required();
    complement_cmd->add_flag("--stats", stats, "Print construction metrics to stderr");
    complement_cmd->add_option("--state-limit", state_limit, "Abort past this many macrostates");
    complement_cmd->callback([&] {
        const Nbw a = read_nbw_file(in_path);
        const Method m = parse_method(method_text);
        ComplementStats st;
        const Nbw c = complement(a, m, state_limit, &st);
        write_nbw_file(out_path, c);
        if (stats) {
            err << "method: " << method_name(m) << "\n";
            err << "input states: " << st.input_states << "\n";
            err << "macrostates: " << st.macrostates << "\n";
            if (st.max_rank >= 0) err << "max rank: " << st.max_rank << "\n";
            if (m == Method::ncb) {
                const std::size_t bound = ncb_state_bound(st.input_states);
                err << "initial macrostates: " << st.initial_count << "\n";
                err << "triple macrostates: " << st.triple_count << "\n";
                err << "bound 2^n+4^n: " << bound << (st.macrostates <= bound ? " (ok)" : " (exceeded)")
                    << "\n";
            }
        }
    });

    auto* ambiguity_cmd = app.add_subcommand("ambiguity", "Decide finite ambiguity");
    ambiguity_cmd->add_option("--in", in_path, "Input automaton")->required();
    ambiguity_cmd->callback([&] {
        const Nbw a = read_nbw_file(in_path);
        const auto verdict = is_finitely_ambiguous(a);
        if (verdict.finitely_ambiguous) {
            out << "finite\n";
        } else {
            out << "infinite\nwitness: " << describe(a, *verdict.witness) << "\n";
            code = kExitFalse;
        }
    });

    auto* member_cmd = app.add_subcommand("member", "Test whether stem.loop^w is accepted");
    member_cmd->add_option("--in", in_path, "Input automaton")->required();
    member_cmd->add_option("--stem", stem, "Stem symbols")->required();
    member_cmd->add_option("--loop", loop, "Loop symbols (nonempty)")->required();
    member_cmd->callback([&] {
        const Nbw a = read_nbw_file(in_path);
        const bool accepted = member(a, read_lasso(a, stem, loop));
        out << (accepted ? "true" : "false") << "\n";
        code = accepted ? kExitTrue : kExitFalse;
    });

    auto* empty_cmd = app.add_subcommand("empty", "Test language emptiness");
    empty_cmd->add_option("--in", in_path, "Input automaton")->required();
    empty_cmd->callback([&] {
        const Nbw a = read_nbw_file(in_path);
        const auto verdict = is_empty(a);
        if (verdict.empty) {
            out << "true\n";
        } else {
            out << "false\nwitness: " << format_lasso(a, *verdict.witness) << "\n";
            code = kExitFalse;
        }
    });

    auto* contains_cmd = app.add_subcommand("contains", "Test L(lhs) subset of L(rhs)");
    contains_cmd->add_option("--lhs", lhs_path, "Left automaton")->required();
    contains_cmd->add_option("--rhs", rhs_path, "Right automaton")->required();
    contains_cmd->add_option("--method", method_text, "kv, kv-fa or ncb (default ncb)");
    contains_cmd->add_flag("--no-prune", no_prune, "Disable subsumption pruning");
    contains_cmd->add_option("--state-limit", state_limit, "Abort past this many states");
    contains_cmd->callback([&] {
        const Nbw lhs = read_nbw_file(lhs_path);
        const Nbw rhs = read_nbw_file(rhs_path);
        const auto r = contains(lhs, rhs, parse_method(method_text), !no_prune, state_limit);
        if (r.contained) {
            out << "true\n";
        } else {
            out << "false\ncounterexample: " << format_lasso(lhs, *r.counterexample) << "\n";
            code = kExitFalse;
        }
    });

    auto* dag_cmd = app.add_subcommand("dag", "Co-deterministic DAG metrics over a lasso");
    dag_cmd->add_option("--in", in_path, "Input automaton")->required();
    dag_cmd->add_option("--stem", stem, "Stem symbols")->required();
    dag_cmd->add_option("--loop", loop, "Loop symbols (nonempty)")->required();
    dag_cmd->callback([&] {
        const Nbw a = read_nbw_file(in_path);
        require_macro_size(a);
        const FoldedCoDetDag dag(a, read_lasso(a, stem, loop));
        const auto stage = dag.peel_stage();
        out << "omega-branches: " << dag.count_omega_branches() << "\n";
        out << "accepting: " << (dag.is_accepting() ? "true" : "false") << "\n";
        out << "peel stage: " << (stage ? std::to_string(*stage) : std::string("none")) << "\n";
    });

    GenConfig cfg;
    std::size_t trials = 1;
    std::size_t lasso_bound = 3;
    std::string family_text = "general", methods_text = "kv,kv-fa,ncb";
    auto* validate_cmd = app.add_subcommand("validate", "Cross-validate complements on random automata");
    validate_cmd->add_option("--n", cfg.n, "States before completion")->required();
    validate_cmd->add_option("--trials", trials, "Number of automata");
    validate_cmd->add_option("--seed", cfg.seed, "Seed of the first trial; trial i uses seed+i");
    validate_cmd->add_option("--family", family_text, "general, reverse-deterministic or fanbw-filtered");
    validate_cmd->add_option("--methods", methods_text, "Comma-separated methods");
    validate_cmd->add_option("--lasso-bound", lasso_bound, "Max stem and loop length");
    validate_cmd->add_option("--alphabet-size", cfg.alphabet_size, "Alphabet size");
    validate_cmd->add_option("--density", cfg.transition_density, "Expected successors per state and symbol");
    validate_cmd->add_option("--accepting", cfg.accepting_fraction, "Fraction of accepting states");
    validate_cmd->add_option("--state-limit", state_limit, "Skip complements past this size");
    validate_cmd->callback([&] {
        cfg.family = parse_family(family_text);
        const auto methods = parse_methods(methods_text);
        const std::uint64_t first = cfg.seed;
        std::size_t failed = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            GenConfig trial = cfg;
            trial.seed = first + i;
            const auto report = cross_validate(generate(trial), methods, lasso_bound, state_limit);
            out << report_to_json(report, &trial) << "\n";
            if (!report.ok()) ++failed;
        }
        err << trials - failed << "/" << trials << " trials without violations\n";
        code = failed == 0 ? kExitTrue : kExitFalse;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitTrue;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitTrue;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return code;
}

}  // namespace buchi::cli
