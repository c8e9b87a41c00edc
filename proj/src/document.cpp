#include "oflat/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oflat/error.hpp"

namespace oflat {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& message, std::string detail = {}) {
    throw Error(ErrorCode::MalformedDocument, message, std::move(detail));
}

const json& required(const json& doc, const char* field) {
    const auto it = doc.find(field);
    if (it == doc.end()) {
        throw Error(ErrorCode::MissingField, std::string("missing field '") + field + "'", field);
    }
    return *it;
}

std::string as_text(const json& value, const std::string& where) {
    if (!value.is_string()) malformed("expected a string", where);
    return value.get<std::string>();
}

std::vector<std::string> as_text_list(const json& value, const std::string& where) {
    if (!value.is_array()) malformed("expected an array of strings", where);
    std::vector<std::string> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(as_text(value[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::string json_quoted(std::string_view s) { return json(s).dump(-1, ' ', false); }

std::string quoted_list(const std::set<StateId>& items) {
    std::string out = "[";
    bool first = true;
    for (const auto& s : items) {
        if (!first) out += ", ";
        out += json_quoted(s);
        first = false;
    }
    return out + "]";
}

std::string dot_id(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

std::string_view fill_for(Color c) {
    switch (c) {
        case Color::Blue: return "blue";
        case Color::Green: return "green";
        case Color::Red: return "red";
        case Color::Plain: break;
    }
    return "white";
}

FiniteAutomaton build(const StateId& initial, std::initializer_list<Transition> transitions,
                      std::set<StateId> accept, std::set<StateId> declared = {}) {
    FiniteAutomaton a{initial, transitions, std::move(accept), std::move(declared)};
    require_valid(a);
    return a;
}

std::vector<AutomatonDocument> make_examples() {
    std::vector<AutomatonDocument> out;
    out.push_back({"example1DFA",
                   build("START",
                         {{"START", "a", "A"}, {"A", "b", "B"}, {"B", "a", "C"},
                          {"C", "b", "B"}, {"C", "a", "A"}},
                         {"START", "B", "C"})});
    // Words over {a,b} ending in "ab".
    out.push_back({"endsWithAB",
                   build("S", {{"S", "a", "S"}, {"S", "b", "S"}, {"S", "a", "P"}, {"P", "b", "Q"}},
                         {"Q"})});
    // example1DFA plus a dead end D (accessible, not productive) and an
    // orphan U (productive, not accessible).
    out.push_back({"trap",
                   build("START",
                         {{"START", "a", "A"}, {"A", "b", "B"}, {"B", "a", "C"},
                          {"C", "b", "B"}, {"C", "a", "A"}, {"A", "a", "D"},
                          {"U", "b", "C"}},
                         {"START", "B", "C"})});
    // Even number of a's; complete DFA.
    out.push_back({"evenA",
                   build("E", {{"E", "a", "O"}, {"E", "b", "E"}, {"O", "a", "E"}, {"O", "b", "O"}},
                         {"E"})});
    return out;
}

}  // namespace

AutomatonDocument parse_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        malformed("document is not valid JSON", e.what());
    }
    if (!doc.is_object()) malformed("document must be a JSON object");

    AutomatonDocument out;
    auto& a = out.automaton;
    a.initial_state = as_text(required(doc, "initialState"), "initialState");

    const auto& transitions = required(doc, "transitions");
    if (!transitions.is_array()) malformed("expected an array of triples", "transitions");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const auto where = "transitions[" + std::to_string(i) + "]";
        const auto triple = as_text_list(transitions[i], where);
        if (triple.size() != 3) malformed("transition must be [from, symbol, to]", where);
        Transition t{triple[0], Symbol(triple[1]), triple[2]};
        if (std::find(a.transitions.begin(), a.transitions.end(), t) == a.transitions.end()) {
            a.transitions.push_back(std::move(t));
        }
    }

    for (auto& s : as_text_list(required(doc, "acceptStates"), "acceptStates")) {
        a.accept_states.insert(std::move(s));
    }
    if (const auto it = doc.find("states"); it != doc.end()) {
        for (auto& s : as_text_list(*it, "states")) a.declared_states.insert(std::move(s));
    }
    if (const auto it = doc.find("name"); it != doc.end()) out.name = as_text(*it, "name");

    require_valid(a);
    return out;
}

FiniteAutomaton parse_automaton(std::string_view text) { return parse_document(text).automaton; }

std::string serialize_document(const AutomatonDocument& doc) {
    const auto& a = doc.automaton;
    std::ostringstream os;
    os << "{\n";
    if (doc.name) os << "  \"name\": " << json_quoted(*doc.name) << ",\n";
    os << "  \"initialState\": " << json_quoted(a.initial_state) << ",\n";
    if (a.transitions.empty()) {
        os << "  \"transitions\": [],\n";
    } else {
        os << "  \"transitions\": [\n";
        for (std::size_t i = 0; i < a.transitions.size(); ++i) {
            const auto& t = a.transitions[i];
            os << "    [" << json_quoted(t.from) << ", " << json_quoted(t.on.glyph) << ", " << json_quoted(t.to)
               << "]" << (i + 1 < a.transitions.size() ? "," : "") << "\n";
        }
        os << "  ],\n";
    }
    os << "  \"acceptStates\": " << quoted_list(a.accept_states);
    if (!a.declared_states.empty()) {
        os << ",\n  \"states\": " << quoted_list(a.declared_states);
    }
    os << "\n}\n";
    return os.str();
}

std::string serialize_automaton(const FiniteAutomaton& a, const std::optional<std::string>& name) {
    return serialize_document({name, a});
}

FiniteAutomaton read_automaton_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) malformed("cannot read file", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_automaton(buf.str());
}

const std::vector<AutomatonDocument>& list_examples() {
    static const std::vector<AutomatonDocument> catalog = make_examples();
    return catalog;
}

const AutomatonDocument* find_example(std::string_view name) {
    for (const auto& doc : list_examples()) {
        if (doc.name == name) return &doc;
    }
    return nullptr;
}

std::string export_dot(const FiniteAutomaton& a, const StateColoring& coloring,
                       std::string_view graph_name) {
    const auto states = state_set(a);
    std::string start = "__start";
    while (states.contains(start)) start += "_";

    std::ostringstream os;
    os << "digraph " << dot_id(graph_name) << " {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle, style=filled, fillcolor=white];\n";
    os << "  " << dot_id(start) << " [shape=point, label=\"\"];\n";
    for (const auto& s : states) {
        const auto it = coloring.find(s);
        const auto fill = fill_for(it == coloring.end() ? Color::Plain : it->second);
        os << "  " << dot_id(s) << " [shape="
           << (a.accept_states.contains(s) ? "doublecircle" : "circle") << ", fillcolor=" << fill
           << "];\n";
    }
    os << "  " << dot_id(start) << " -> " << dot_id(a.initial_state) << ";\n";
    for (const auto& t : a.transitions) {
        os << "  " << dot_id(t.from) << " -> " << dot_id(t.to) << " [label=" << dot_id(t.on.glyph)
           << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace oflat
