#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oflat/automaton.hpp"
#include "oflat/simulation.hpp"

namespace oflat {

// The `.fa.json` document: initialState, transitions as [from, symbol, to]
// triples, acceptStates, and the optional `states` and `name` fields.
struct AutomatonDocument {
    std::optional<std::string> name;
    FiniteAutomaton automaton;

    bool operator==(const AutomatonDocument&) const = default;
};

// Throws MALFORMED_DOCUMENT, MISSING_FIELD (detail = field name),
// SYMBOL_NOT_SINGLE, EMPTY_STATE_NAME or INVALID_STATE_NAME. Repeated
// transitions are dropped, keeping the first occurrence.
AutomatonDocument parse_document(std::string_view text);
FiniteAutomaton parse_automaton(std::string_view text);

// Canonical form: fixed key order, sorted acceptStates/states, transitions
// in stored order, two-space indentation, trailing newline.
std::string serialize_automaton(const FiniteAutomaton& a,
                                const std::optional<std::string>& name = std::nullopt);
std::string serialize_document(const AutomatonDocument& doc);

FiniteAutomaton read_automaton_file(const std::string& path);

// Bundled examples, in a stable order. Always contains "example1DFA".
const std::vector<AutomatonDocument>& list_examples();
const AutomatonDocument* find_example(std::string_view name);

// DOT digraph: one node per state (accept states double circled), one
// labeled edge per transition and an arrow from a point node into the
// initial state. Colored states get a matching fill.
std::string export_dot(const FiniteAutomaton& a, const StateColoring& coloring = {},
                       std::string_view graph_name = "automaton");

}  // namespace oflat
