#include "buchi/slice_ncb.hpp"

#include "buchi/codet_dag.hpp"
#include "explore.hpp"

#include <limits>

namespace buchi {

namespace {

Slice normalize(std::vector<StateSet> raw, StateSet accepting) {
    Slice out;
    StateSet right;
    for (std::size_t j = raw.size(); j-- > 0;) {
        raw[j] -= right;
        right |= raw[j];
    }
    for (StateSet s : raw) {
        if (s.empty()) continue;
        out.sets.push_back(s);
        out.f_marked.push_back(s.is_subset_of(accepting));
    }
    return out;
}

}  // namespace

Slice initial_slice(const Nbw& a) {
    require_macro_size(a);
    const SuccessorTable t(a);
    return normalize({t.initial() - t.accepting(), t.initial() & t.accepting()}, t.accepting());
}

Slice slice_successor(const Slice& s, Symbol sym, const SuccessorTable& t) {
    std::vector<StateSet> raw;
    for (StateSet part : s.sets) {
        const StateSet next = t.image(part, sym);
        raw.push_back(next - t.accepting());
        raw.push_back(next & t.accepting());
    }
    return normalize(std::move(raw), t.accepting());
}

Slice slice_successor(const Slice& s, Symbol sym, const Nbw& a) {
    require_macro_size(a);
    return slice_successor(s, sym, SuccessorTable(a));
}

std::string to_string(const NcbMacrostate& m) {
    if (!m.is_triple()) return "I" + m.n.to_string();
    return "(" + m.n.to_string() + "," + m.c.to_string() + "," + m.b.to_string() + ")";
}

namespace {

NcbMacrostate triple_step(const SuccessorTable& t, StateSet n, StateSet c, StateSet b, Symbol sym) {
    const ReducedTransition step(t, {n, sym});
    const StateSet n2 = step.full_image();
    const StateSet c2 = step.image_unchecked(c) | (n2 & t.accepting());
    const StateSet b2 = b.empty() ? c2 : step.image_unchecked(b);
    return NcbMacrostate::triple(n2, c2, b2);
}

}  // namespace

std::vector<NcbMacrostate> ncb_successors(const SuccessorTable& t, const NcbMacrostate& m,
                                          Symbol sym) {
    if (m.is_triple()) return {triple_step(t, m.n, m.c, m.b, sym)};
    const StateSet f = m.n & t.accepting();
    return {NcbMacrostate::initial_of(t.image(m.n, sym)), triple_step(t, m.n, f, f, sym)};
}

std::vector<NcbMacrostate> ncb_successors(const Nbw& a, const NcbMacrostate& m, Symbol sym) {
    require_macro_size(a);
    return ncb_successors(SuccessorTable(a), m, sym);
}

std::size_t ncb_state_bound(std::size_t n) {
    if (n >= 31) return std::numeric_limits<std::size_t>::max();
    return (std::size_t{1} << n) + (std::size_t{1} << (2 * n));
}

NcbComplement complement_ncb(const Nbw& a, std::size_t state_limit) {
    require_macro_size(a);
    const SuccessorTable table(a);
    auto explored = detail::explore<NcbMacrostate>(
        a.alphabet(), {NcbMacrostate::initial_of(table.initial())},
        [&](const NcbMacrostate& m, Symbol sym) { return ncb_successors(table, m, sym); },
        [](const NcbMacrostate& m) { return m.is_accepting(); }, state_limit);
    NcbComplement out{std::move(explored.automaton), std::move(explored.states), 0, 0};
    for (const auto& m : out.states) ++(m.is_triple() ? out.triple_count : out.initial_count);
    return out;
}

bool subsumes(const NcbMacrostate& m, const NcbMacrostate& m2) {
    return m.is_triple() && m2.is_triple() && m.n == m2.n && m.c.is_subset_of(m2.c);
}

}  // namespace buchi
