#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omega_reduce {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
inline constexpr std::uint32_t kNoId = 0xffffffffu;

struct Transition {
    StateId src;
    SymbolId sym;
    StateId dst;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// An ultimately periodic word stem.loop^w. The loop must be nonempty.
struct LassoWord {
    std::vector<std::string> stem;
    std::vector<std::string> loop;
};

struct ParseError : std::runtime_error {
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    int line;
};

/// Immutable Buchi automaton over named states and symbols.
///
/// States and symbols are interned to dense ids in lexicographic name order,
/// so two automata with equal name sets assign equal ids. All mutating
/// operations live outside the class and return new automata.
class BuchiAutomaton {
public:
    class Builder;

    BuchiAutomaton() = default;

    std::size_t state_count() const { return state_names_.size(); }
    std::size_t symbol_count() const { return symbol_names_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }

    const std::vector<std::string>& states() const { return state_names_; }
    const std::vector<std::string>& symbols() const { return symbol_names_; }

    const std::string& state_name(StateId q) const { return state_names_.at(q); }
    const std::string& symbol_name(SymbolId a) const { return symbol_names_.at(a); }

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<SymbolId> find_symbol(std::string_view name) const;

    StateId state_id(std::string_view name) const;
    SymbolId symbol_id(std::string_view name) const;

    bool is_initial(StateId q) const { return initial_.at(q); }
    bool is_final(StateId q) const { return final_.at(q); }

    std::vector<StateId> initial_states() const;
    std::vector<StateId> final_states() const;

    /// All transitions, sorted by (src, sym, dst); no duplicates.
    const std::vector<Transition>& transitions() const { return transitions_; }

    /// Outgoing transitions of q (contiguous slice of transitions()).
    std::span<const Transition> out(StateId q) const;
    /// Outgoing a-transitions of q.
    std::span<const Transition> out(StateId q, SymbolId a) const;

    bool has_transition(const Transition& t) const;
    bool has_dead_end() const;

    friend bool operator==(const BuchiAutomaton&, const BuchiAutomaton&) = default;

private:
    friend class Builder;

    std::vector<std::string> state_names_;   // sorted
    std::vector<std::string> symbol_names_;  // sorted
    std::vector<bool> initial_;
    std::vector<bool> final_;
    std::vector<Transition> transitions_;  // sorted by (src, sym, dst)
    std::vector<std::uint32_t> out_begin_; // state_count()+1 offsets into transitions_
};

/// Accumulates named parts and produces a validated automaton. States and
/// symbols mentioned anywhere (transitions, initial or final markers) are
/// added implicitly.
class BuchiAutomaton::Builder {
public:
    Builder& add_state(std::string_view name);
    Builder& add_symbol(std::string_view name);
    Builder& add_transition(std::string_view src, std::string_view sym, std::string_view dst);
    Builder& mark_initial(std::string_view name);
    Builder& mark_final(std::string_view name);

    BuchiAutomaton build() const;

private:
    std::vector<std::string> states_, symbols_;
    std::vector<std::array<std::string, 3>> transitions_;  // {src, sym, dst}
    std::vector<std::string> initial_, final_;
};

/// True iff the string is usable as a state/symbol identifier in the BA
/// format: nonempty, no comma, no whitespace, no "->", no leading '#'.
bool valid_identifier(std::string_view s);

BuchiAutomaton parse_ba(std::string_view text);
std::string serialize_ba(const BuchiAutomaton& a);

/// Deletes states without successors, iterated to a fixpoint.
BuchiAutomaton remove_dead_ends(const BuchiAutomaton& a);

/// Keeps exactly the states that lie on some accepting run: reachable from
/// an initial state and able to reach a final state that lies on a cycle.
BuchiAutomaton remove_nonlive_states(const BuchiAutomaton& a);

/// Membership oracle for stem.loop^w, decided on the product of the
/// automaton with the loop positions.
bool accepts_lasso(const BuchiAutomaton& a, const LassoWord& w);
bool accepts_lasso(const BuchiAutomaton& a, std::span<const SymbolId> stem,
                   std::span<const SymbolId> loop);

}  // namespace omega_reduce
