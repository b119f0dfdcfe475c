#include "buchi/nbw.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "graph.hpp"

namespace buchi {

std::string StateSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](State s) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(s);
    });
    out += '}';
    return out;
}

Nbw::Nbw(std::size_t num_states, std::vector<std::string> alphabet)
    : alphabet_(std::move(alphabet)),
      accepting_(num_states, 0),
      transitions_(num_states * alphabet_.size()) {}

std::optional<Symbol> Nbw::symbol_index(std::string_view name) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (alphabet_[i] == name) return static_cast<Symbol>(i);
    }
    return std::nullopt;
}

bool Nbw::is_initial(State s) const {
    return std::binary_search(initial_.begin(), initial_.end(), s);
}

std::vector<State> Nbw::accepting_states() const {
    std::vector<State> out;
    for (State s = 0; s < num_states(); ++s) {
        if (accepting_[s]) out.push_back(s);
    }
    return out;
}

void Nbw::check_state(State s) const {
    if (s >= num_states()) {
        throw std::out_of_range("state " + std::to_string(s) + " out of range");
    }
}

void Nbw::check_symbol(Symbol a) const {
    if (a >= alphabet_.size()) {
        throw std::out_of_range("symbol " + std::to_string(a) + " out of range");
    }
}

State Nbw::add_state(bool accepting) {
    const auto s = static_cast<State>(num_states());
    accepting_.push_back(accepting ? 1 : 0);
    transitions_.resize(transitions_.size() + alphabet_.size());
    return s;
}

void Nbw::add_initial(State s) {
    check_state(s);
    auto it = std::lower_bound(initial_.begin(), initial_.end(), s);
    if (it == initial_.end() || *it != s) initial_.insert(it, s);
}

void Nbw::set_accepting(State s, bool accepting) {
    check_state(s);
    accepting_[s] = accepting ? 1 : 0;
}

void Nbw::add_transition(State from, Symbol a, State to) {
    check_state(from);
    check_state(to);
    check_symbol(a);
    auto& targets = transitions_[index(from, a)];
    auto it = std::lower_bound(targets.begin(), targets.end(), to);
    if (it == targets.end() || *it != to) targets.insert(it, to);
}

void Nbw::set_successors(State from, Symbol a, std::vector<State> targets) {
    check_state(from);
    check_symbol(a);
    for (State t : targets) check_state(t);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    transitions_[index(from, a)] = std::move(targets);
}

bool Nbw::is_complete() const {
    return std::none_of(transitions_.begin(), transitions_.end(),
                        [](const auto& t) { return t.empty(); });
}

void validate_lasso(const LassoWord& w, std::size_t alphabet_size) {
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    auto bad = [&](Symbol s) { return s >= alphabet_size; };
    if (std::any_of(w.stem.begin(), w.stem.end(), bad) ||
        std::any_of(w.loop.begin(), w.loop.end(), bad)) {
        throw std::invalid_argument("lasso symbol out of range");
    }
}

namespace {

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) out.push_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<std::size_t> parse_number(std::string_view tok) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
    return value;
}

}  // namespace

std::vector<Symbol> parse_symbols(const Nbw& a, std::string_view text) {
    std::vector<Symbol> out;
    for (std::string_view tok : split_ws(text)) {
        if (auto s = a.symbol_index(tok)) {
            out.push_back(*s);
            continue;
        }
        for (char c : tok) {
            auto s = a.symbol_index(std::string_view(&c, 1));
            if (!s) throw std::invalid_argument("unknown symbol '" + std::string(tok) + "'");
            out.push_back(*s);
        }
    }
    return out;
}

std::string format_symbols(const Nbw& a, std::span<const Symbol> word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ' ';
        out += a.alphabet().at(word[i]);
    }
    return out;
}

std::string format_lasso(const Nbw& a, const LassoWord& w) {
    return "(" + format_symbols(a, w.stem) + ")(" + format_symbols(a, w.loop) + ")^w";
}

Nbw parse_nbw(std::string_view text) {
    std::optional<std::size_t> num_states;
    std::optional<std::vector<std::string>> alphabet;
    Nbw result;
    bool seen_header = false;
    bool seen_initial = false;
    bool seen_accepting = false;
    std::set<std::pair<State, Symbol>> seen_trans;

    auto need_shape = [&](std::size_t line) {
        if (!num_states || !alphabet) {
            throw ParseError(line, "'states' and 'alphabet' must precede this line");
        }
        if (result.num_states() != *num_states) result = Nbw(*num_states, *alphabet);
    };
    auto state_of = [&](std::size_t line, std::string_view tok) {
        auto v = parse_number(tok);
        if (!v) throw ParseError(line, "expected a state index, got '" + std::string(tok) + "'");
        if (*v >= *num_states) {
            throw ParseError(line, "state " + std::string(tok) + " out of range");
        }
        return static_cast<State>(*v);
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (!seen_header) {
            if (line != "nbw") throw ParseError(line_no, "expected header 'nbw'");
            seen_header = true;
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'key: values'");
        const std::string_view key = trim(line.substr(0, colon));
        const auto values = split_ws(line.substr(colon + 1));

        if (key == "states") {
            if (num_states) throw ParseError(line_no, "duplicate 'states' line");
            if (values.size() != 1) throw ParseError(line_no, "'states' takes one number");
            auto v = parse_number(values[0]);
            if (!v) throw ParseError(line_no, "invalid state count");
            if (*v == 0) throw ParseError(line_no, "automaton must have at least one state");
            num_states = *v;
        } else if (key == "alphabet") {
            if (alphabet) throw ParseError(line_no, "duplicate 'alphabet' line");
            if (values.empty()) throw ParseError(line_no, "alphabet must be nonempty");
            std::vector<std::string> syms(values.begin(), values.end());
            std::set<std::string> uniq(syms.begin(), syms.end());
            if (uniq.size() != syms.size()) throw ParseError(line_no, "duplicate alphabet symbol");
            alphabet = std::move(syms);
        } else if (key == "initial" || key == "accepting") {
            need_shape(line_no);
            bool& seen = key == "initial" ? seen_initial : seen_accepting;
            if (seen) throw ParseError(line_no, "duplicate '" + std::string(key) + "' line");
            seen = true;
            for (auto tok : values) {
                const State s = state_of(line_no, tok);
                if (key == "initial") {
                    result.add_initial(s);
                } else {
                    result.set_accepting(s);
                }
            }
        } else if (key == "trans") {
            need_shape(line_no);
            if (values.size() < 3) {
                throw ParseError(line_no, "'trans' needs a source, a symbol and at least one target");
            }
            const State src = state_of(line_no, values[0]);
            auto sym = result.symbol_index(values[1]);
            if (!sym) throw ParseError(line_no, "unknown symbol '" + std::string(values[1]) + "'");
            if (!seen_trans.emplace(src, *sym).second) {
                throw ParseError(line_no, "duplicate 'trans' line for this state and symbol");
            }
            std::vector<State> targets;
            for (std::size_t i = 2; i < values.size(); ++i) targets.push_back(state_of(line_no, values[i]));
            result.set_successors(src, *sym, std::move(targets));
        } else {
            throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        }
        if (end == text.size()) break;
    }
    if (!seen_header) throw ParseError(line_no, "missing header 'nbw'");
    if (!num_states) throw ParseError(line_no, "missing 'states' line");
    if (!alphabet) throw ParseError(line_no, "missing 'alphabet' line");
    need_shape(line_no);
    return result;
}

std::string to_text(const Nbw& a) {
    std::ostringstream out;
    out << "nbw\n";
    out << "states: " << a.num_states() << '\n';
    out << "alphabet:";
    for (const auto& s : a.alphabet()) out << ' ' << s;
    out << "\ninitial:";
    for (State s : a.initial()) out << ' ' << s;
    out << "\naccepting:";
    for (State s : a.accepting_states()) out << ' ' << s;
    out << '\n';
    for (State s = 0; s < a.num_states(); ++s) {
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
            auto targets = a.successors(s, sym);
            if (targets.empty()) continue;
            out << "trans: " << s << ' ' << a.alphabet()[sym];
            for (State t : targets) out << ' ' << t;
            out << '\n';
        }
    }
    return out.str();
}

Nbw read_nbw_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_nbw(buf.str());
}

void write_nbw_file(const std::string& path, const Nbw& a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_text(a);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Nbw complete(const Nbw& a) {
    if (a.is_complete()) return a;
    Nbw out = a;
    const State sink = out.add_state(false);
    for (State s = 0; s < out.num_states(); ++s) {
        for (Symbol sym = 0; sym < out.alphabet_size(); ++sym) {
            if (out.successors(s, sym).empty()) out.add_transition(s, sym, sink);
        }
    }
    return out;
}

void require_macro_size(const Nbw& a) {
    if (a.num_states() > kMaxMacroStates) {
        throw std::invalid_argument("automaton has " + std::to_string(a.num_states()) +
                                    " states; macrostate constructions support at most " +
                                    std::to_string(kMaxMacroStates));
    }
}

StateSet successors(const Nbw& a, StateSet s, Symbol sym) {
    require_macro_size(a);
    StateSet out;
    s.for_each([&](State q) {
        for (State t : a.successors(q, sym)) out.insert(t);
    });
    return out;
}

TrimResult trim_useful(const Nbw& a) {
    const std::size_t n = a.num_states();
    detail::Adjacency succ(n);
    for (State s = 0; s < n; ++s) {
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
            for (State t : a.successors(s, sym)) succ[s].push_back(t);
        }
    }
    const auto reachable = detail::forward_closure(succ, a.initial());
    const auto scc = detail::strongly_connected_components(succ, reachable);
    std::vector<char> on_accepting_cycle(n, 0);
    std::vector<char> comp_accepting(scc.count + 1, 0);
    for (State s = 0; s < n; ++s) {
        if (reachable[s] && a.is_accepting(s) && scc.nontrivial[scc.component[s]]) {
            comp_accepting[scc.component[s]] = 1;
        }
    }
    for (State s = 0; s < n; ++s) {
        if (reachable[s] && comp_accepting[scc.component[s]]) on_accepting_cycle[s] = 1;
    }
    const auto useful = detail::backward_closure(succ, on_accepting_cycle, reachable);

    TrimResult out;
    out.remap.assign(n, std::nullopt);
    std::size_t kept = 0;
    for (State s = 0; s < n; ++s) {
        if (useful[s]) out.remap[s] = static_cast<State>(kept++);
    }
    out.automaton = Nbw(kept, a.alphabet());
    for (State s = 0; s < n; ++s) {
        if (!out.remap[s]) continue;
        const State ns = *out.remap[s];
        if (a.is_initial(s)) out.automaton.add_initial(ns);
        if (a.is_accepting(s)) out.automaton.set_accepting(ns);
        for (Symbol sym = 0; sym < a.alphabet_size(); ++sym) {
            std::vector<State> targets;
            for (State t : a.successors(s, sym)) {
                if (out.remap[t]) targets.push_back(*out.remap[t]);
            }
            out.automaton.set_successors(ns, sym, std::move(targets));
        }
    }
    return out;
}

SuccessorTable::SuccessorTable(const Nbw& a)
    : num_states_(a.num_states()), alphabet_size_(a.alphabet_size()) {
    require_macro_size(a);
    initial_ = StateSet::from_vector(a.initial());
    accepting_ = StateSet::from_vector(a.accepting_states());
    succ_.resize(num_states_ * alphabet_size_);
    for (State s = 0; s < num_states_; ++s) {
        for (Symbol sym = 0; sym < alphabet_size_; ++sym) {
            StateSet set;
            for (State t : a.successors(s, sym)) set.insert(t);
            succ_[s * alphabet_size_ + sym] = set;
        }
    }
}

}  // namespace buchi
