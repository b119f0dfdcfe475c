#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace buchi {

using State = std::uint32_t;
using Symbol = std::uint32_t;

/// Macrostate constructions pack state sets into one machine word.
inline constexpr std::size_t kMaxMacroStates = 64;

/// Set of states of an automaton with at most 64 states, ordered by index.
class StateSet {
public:
    constexpr StateSet() = default;
    constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}
    StateSet(std::initializer_list<State> states) {
        for (State s : states) insert(s);
    }

    static StateSet from_vector(const std::vector<State>& states) {
        StateSet out;
        for (State s : states) out.insert(s);
        return out;
    }

    static constexpr StateSet full(std::size_t n) {
        return StateSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

    constexpr bool contains(State s) const { return (bits_ >> s) & 1U; }
    constexpr void insert(State s) { bits_ |= std::uint64_t{1} << s; }
    constexpr void erase(State s) { bits_ &= ~(std::uint64_t{1} << s); }

    constexpr bool is_subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(StateSet other) const { return (bits_ & other.bits_) != 0; }

    /// Lowest-index member; undefined on the empty set.
    constexpr State min() const { return static_cast<State>(std::countr_zero(bits_)); }

    std::vector<State> to_vector() const {
        std::vector<State> out;
        out.reserve(size());
        for_each([&](State s) { out.push_back(s); });
        return out;
    }

    template <typename F>
    constexpr void for_each(F&& f) const {
        for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
            f(static_cast<State>(std::countr_zero(rest)));
        }
    }

    constexpr StateSet operator|(StateSet o) const { return StateSet(bits_ | o.bits_); }
    constexpr StateSet operator&(StateSet o) const { return StateSet(bits_ & o.bits_); }
    constexpr StateSet operator-(StateSet o) const { return StateSet(bits_ & ~o.bits_); }
    constexpr StateSet& operator|=(StateSet o) { bits_ |= o.bits_; return *this; }
    constexpr StateSet& operator&=(StateSet o) { bits_ &= o.bits_; return *this; }
    constexpr StateSet& operator-=(StateSet o) { bits_ &= ~o.bits_; return *this; }

    constexpr bool operator==(const StateSet&) const = default;
    constexpr auto operator<=>(const StateSet&) const = default;

    /// Renders as `{0,2,5}`.
    std::string to_string() const;

private:
    std::uint64_t bits_ = 0;
};

}  // namespace buchi

template <>
struct std::hash<buchi::StateSet> {
    std::size_t operator()(const buchi::StateSet& s) const noexcept {
        return std::hash<std::uint64_t>{}(s.bits());
    }
};
