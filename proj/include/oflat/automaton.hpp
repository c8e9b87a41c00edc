#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace oflat {

using StateId = std::string;

// One input character, stored as UTF-8. A well-formed symbol holds exactly
// one unicode scalar; malformed ones can still be represented so that
// validate() is able to report them.
struct Symbol {
    std::string glyph;

    Symbol() = default;
    Symbol(std::string g) : glyph(std::move(g)) {}
    Symbol(const char* g) : glyph(g) {}

    bool is_single() const;

    auto operator<=>(const Symbol&) const = default;
};

using Word = std::vector<Symbol>;

// Splits UTF-8 text into one Symbol per scalar. Throws INVALID_WORD on
// malformed UTF-8.
Word make_word(std::string_view utf8);
std::string to_text(const Word& word);

struct Transition {
    StateId from;
    Symbol on;
    StateId to;

    auto operator<=>(const Transition&) const = default;
};

// Plain data; the state set is inferred from the initial state, transition
// endpoints, accept states and the explicitly declared (possibly isolated)
// states. Transitions keep insertion order but behave as a set.
struct FiniteAutomaton {
    StateId initial_state;
    std::vector<Transition> transitions;
    std::set<StateId> accept_states;
    std::set<StateId> declared_states;

    bool operator==(const FiniteAutomaton&) const = default;
};

struct Violation {
    enum class Kind { EmptyStateName, InvalidStateName, SymbolNotSingle };
    Kind kind;
    std::string where;

    std::string_view code() const;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate(const FiniteAutomaton& a);
bool is_valid(const FiniteAutomaton& a);
// Throws the Error matching the first violation (INVALID_AUTOMATON family).
void require_valid(const FiniteAutomaton& a);

// Nonempty, no leading or trailing whitespace.
bool is_valid_state_name(std::string_view name);

std::set<StateId> state_set(const FiniteAutomaton& a);
std::set<Symbol> alphabet(const FiniteAutomaton& a);
bool is_deterministic(const FiniteAutomaton& a);

// Throws UNKNOWN_STATE when `s` is not a state of `a`.
std::vector<Transition> transitions_for(const FiniteAutomaton& a, const StateId& s,
                                        const Symbol& x);

struct Configuration {
    std::set<StateId> active;
    std::size_t consumed = 0;

    bool operator==(const Configuration&) const = default;
};

enum class Verdict { Accepted, RejectedEnd, RejectedStuck };
std::string_view to_string(Verdict v);

struct Trace {
    Word word;
    std::vector<Configuration> configs;
    Verdict verdict = Verdict::RejectedEnd;

    bool operator==(const Trace&) const = default;
};

Configuration step_config(const FiniteAutomaton& a, const Configuration& c, const Symbol& x);
bool accepts(const FiniteAutomaton& a, const Word& w);
Trace trace(const FiniteAutomaton& a, const Word& w);

enum class NatureKind { Productive, Accessible, Useful };
std::string_view to_string(NatureKind k);
// Accepts "productive" | "accessible" | "useful"; throws UNKNOWN_KIND.
NatureKind parse_nature_kind(std::string_view text);

std::set<StateId> accessible_states(const FiniteAutomaton& a);
std::set<StateId> productive_states(const FiniteAutomaton& a);
std::set<StateId> useful_states(const FiniteAutomaton& a);
std::set<StateId> states_of_nature(const FiniteAutomaton& a, NatureKind kind);

// Edits. Each returns a new automaton and leaves its argument untouched.
FiniteAutomaton new_automaton(const StateId& initial, bool initial_is_accept);
FiniteAutomaton add_transition(const FiniteAutomaton& a, const Transition& t);
FiniteAutomaton mark_accept(const FiniteAutomaton& a, const StateId& s);
FiniteAutomaton add_state(const FiniteAutomaton& a, const StateId& s);

}  // namespace oflat
