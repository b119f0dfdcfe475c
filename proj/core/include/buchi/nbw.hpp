#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "buchi/state_set.hpp"

namespace buchi {

/// Raised by the text reader; carries the 1-based line of the offending input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Nondeterministic Büchi word automaton over an explicit alphabet.
///
/// States are the indices 0..num_states()-1. Their numeric order is the
/// global order used wherever a "minimal predecessor" is chosen. Successor
/// lists are kept sorted and duplicate-free, so two automata compare equal
/// exactly when they have the same components.
class Nbw {
public:
    Nbw() = default;
    Nbw(std::size_t num_states, std::vector<std::string> alphabet);

    std::size_t num_states() const { return accepting_.size(); }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    std::optional<Symbol> symbol_index(std::string_view name) const;

    const std::vector<State>& initial() const { return initial_; }
    bool is_initial(State s) const;
    bool is_accepting(State s) const { return accepting_[s] != 0; }
    std::vector<State> accepting_states() const;

    std::span<const State> successors(State s, Symbol a) const {
        return transitions_[index(s, a)];
    }

    State add_state(bool accepting = false);
    void add_initial(State s);
    void set_accepting(State s, bool accepting = true);
    void add_transition(State from, Symbol a, State to);
    void set_successors(State from, Symbol a, std::vector<State> targets);

    /// Every (state, symbol) pair has at least one successor.
    bool is_complete() const;

    bool operator==(const Nbw&) const = default;

private:
    std::size_t index(State s, Symbol a) const { return s * alphabet_.size() + a; }
    void check_state(State s) const;
    void check_symbol(Symbol a) const;

    std::vector<std::string> alphabet_;
    std::vector<State> initial_;
    std::vector<char> accepting_;
    std::vector<std::vector<State>> transitions_;
};

/// Ultimately periodic word stem · loop^ω.
struct LassoWord {
    std::vector<Symbol> stem;
    std::vector<Symbol> loop;

    /// Symbol at position i of the infinite word.
    Symbol at(std::size_t i) const {
        return i < stem.size() ? stem[i] : loop[(i - stem.size()) % loop.size()];
    }

    bool operator==(const LassoWord&) const = default;
};

/// Throws std::invalid_argument if the loop is empty or a symbol is out of range.
void validate_lasso(const LassoWord& w, std::size_t alphabet_size);

/// Parses a symbol sequence. Whitespace separates symbol names; a single
/// token that is not a symbol name is split into characters when every
/// character is one.
std::vector<Symbol> parse_symbols(const Nbw& a, std::string_view text);
std::string format_symbols(const Nbw& a, std::span<const Symbol> word);
std::string format_lasso(const Nbw& a, const LassoWord& w);

Nbw parse_nbw(std::string_view text);
std::string to_text(const Nbw& a);
Nbw read_nbw_file(const std::string& path);
void write_nbw_file(const std::string& path, const Nbw& a);

/// Returns `a` unchanged when complete; otherwise appends one non-accepting
/// sink that receives every missing transition and loops on every symbol.
Nbw complete(const Nbw& a);

/// δ(S, a) for automata with at most 64 states.
StateSet successors(const Nbw& a, StateSet s, Symbol sym);

struct TrimResult {
    Nbw automaton;
    /// remap[old] is the new index, or nullopt for removed states.
    std::vector<std::optional<State>> remap;
};

/// Keeps the states that are reachable and can reach a cycle through an
/// accepting state, i.e. the states that occur on some accepting run.
TrimResult trim_useful(const Nbw& a);

/// Bit-parallel successor table used by the macrostate constructions.
class SuccessorTable {
public:
    explicit SuccessorTable(const Nbw& a);

    std::size_t num_states() const { return num_states_; }
    std::size_t alphabet_size() const { return alphabet_size_; }
    StateSet initial() const { return initial_; }
    StateSet accepting() const { return accepting_; }

    StateSet of(State s, Symbol a) const { return succ_[s * alphabet_size_ + a]; }
    StateSet image(StateSet s, Symbol a) const {
        StateSet out;
        s.for_each([&](State q) { out |= of(q, a); });
        return out;
    }

private:
    std::size_t num_states_;
    std::size_t alphabet_size_;
    StateSet initial_;
    StateSet accepting_;
    std::vector<StateSet> succ_;
};

/// Throws std::invalid_argument when `a` has more than kMaxMacroStates states.
void require_macro_size(const Nbw& a);

}  // namespace buchi
