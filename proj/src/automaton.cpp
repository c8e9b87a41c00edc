#include "oflat/automaton.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <iterator>
#include <map>
#include <optional>

#include "oflat/error.hpp"

namespace oflat {

namespace {

// Decodes one UTF-8 scalar starting at `pos`; returns its byte length, or
// nullopt for overlong forms, surrogates, truncation and out-of-range values.
std::optional<std::size_t> scalar_length(std::string_view s, std::size_t pos) {
    const auto lead = static_cast<unsigned char>(s[pos]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (lead < 0x80) {
        return 1;
    } else if ((lead & 0xE0) == 0xC0) {
        len = 2;
        cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
        len = 3;
        cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
        len = 4;
        cp = lead & 0x07;
    } else {
        return std::nullopt;
    }
    if (pos + len > s.size()) return std::nullopt;
    for (std::size_t i = 1; i < len; ++i) {
        const auto c = static_cast<unsigned char>(s[pos + i]);
        if ((c & 0xC0) != 0x80) return std::nullopt;
        cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr std::uint32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return std::nullopt;
    }
    return len;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

void check_name(ValidationReport& report, const StateId& name, std::string where) {
    if (name.empty()) {
        report.push_back({Violation::Kind::EmptyStateName, std::move(where)});
    } else if (!is_valid_state_name(name)) {
        report.push_back({Violation::Kind::InvalidStateName, std::move(where)});
    }
}

void require_name(const StateId& name) {
    if (name.empty()) throw Error(ErrorCode::EmptyStateName, "state name is empty");
    if (!is_valid_state_name(name)) {
        throw Error(ErrorCode::InvalidStateName,
                    "state name must be trimmed UTF-8 text", name);
    }
}

std::set<StateId> reachable(const std::set<StateId>& seeds,
                            const std::multimap<StateId, StateId>& edges) {
    std::set<StateId> seen = seeds;
    std::deque<StateId> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        const StateId s = std::move(queue.front());
        queue.pop_front();
        auto [lo, hi] = edges.equal_range(s);
        for (auto it = lo; it != hi; ++it) {
            if (seen.insert(it->second).second) queue.push_back(it->second);
        }
    }
    return seen;
}

}  // namespace

bool Symbol::is_single() const {
    if (glyph.empty()) return false;
    const auto len = scalar_length(glyph, 0);
    return len && *len == glyph.size();
}

Word make_word(std::string_view utf8) {
    Word word;
    std::size_t pos = 0;
    while (pos < utf8.size()) {
        const auto len = scalar_length(utf8, pos);
        if (!len) {
            throw Error(ErrorCode::InvalidWord, "word is not valid UTF-8",
                        "byte offset " + std::to_string(pos));
        }
        word.emplace_back(std::string(utf8.substr(pos, *len)));
        pos += *len;
    }
    return word;
}

std::string to_text(const Word& word) {
    std::string out;
    for (const auto& x : word) out += x.glyph;
    return out;
}

std::string_view Violation::code() const {
    switch (kind) {
        case Kind::EmptyStateName: return to_string(ErrorCode::EmptyStateName);
        case Kind::InvalidStateName: return to_string(ErrorCode::InvalidStateName);
        case Kind::SymbolNotSingle: return to_string(ErrorCode::SymbolNotSingle);
    }
    return "UNKNOWN";
}

bool is_valid_state_name(std::string_view name) {
    if (name.empty() || is_space(name.front()) || is_space(name.back())) return false;
    for (std::size_t pos = 0; pos < name.size();) {
        const auto len = scalar_length(name, pos);
        if (!len) return false;
        pos += *len;
    }
    return true;
}

ValidationReport validate(const FiniteAutomaton& a) {
    ValidationReport report;
    check_name(report, a.initial_state, "initialState");
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        const auto& t = a.transitions[i];
        const auto at = "transitions[" + std::to_string(i) + "]";
        check_name(report, t.from, at + ".from");
        if (!t.on.is_single()) {
            report.push_back({Violation::Kind::SymbolNotSingle, at + ".symbol"});
        }
        check_name(report, t.to, at + ".to");
    }
    for (const auto& s : a.accept_states) check_name(report, s, "acceptStates");
    for (const auto& s : a.declared_states) check_name(report, s, "states");
    return report;
}

bool is_valid(const FiniteAutomaton& a) { return validate(a).empty(); }

void require_valid(const FiniteAutomaton& a) {
    const auto report = validate(a);
    if (report.empty()) return;
    const auto& first = report.front();
    switch (first.kind) {
        case Violation::Kind::EmptyStateName:
            throw Error(ErrorCode::EmptyStateName, "state name is empty", first.where);
        case Violation::Kind::InvalidStateName:
            throw Error(ErrorCode::InvalidStateName,
                        "state name must be trimmed UTF-8 text", first.where);
        case Violation::Kind::SymbolNotSingle:
            throw Error(ErrorCode::SymbolNotSingle,
                        "transition symbol must be exactly one character", first.where);
    }
}

std::set<StateId> state_set(const FiniteAutomaton& a) {
    std::set<StateId> states = a.declared_states;
    states.insert(a.initial_state);
    for (const auto& t : a.transitions) {
        states.insert(t.from);
        states.insert(t.to);
    }
    states.insert(a.accept_states.begin(), a.accept_states.end());
    return states;
}

std::set<Symbol> alphabet(const FiniteAutomaton& a) {
    std::set<Symbol> symbols;
    for (const auto& t : a.transitions) symbols.insert(t.on);
    return symbols;
}

bool is_deterministic(const FiniteAutomaton& a) {
    std::map<std::pair<StateId, Symbol>, StateId> successor;
    for (const auto& t : a.transitions) {
        auto [it, inserted] = successor.try_emplace({t.from, t.on}, t.to);
        if (!inserted && it->second != t.to) return false;
    }
    return true;
}

std::vector<Transition> transitions_for(const FiniteAutomaton& a, const StateId& s,
                                        const Symbol& x) {
    if (!state_set(a).contains(s)) {
        throw Error(ErrorCode::UnknownState, "no such state", s);
    }
    std::vector<Transition> out;
    for (const auto& t : a.transitions) {
        if (t.from == s && t.on == x && std::find(out.begin(), out.end(), t) == out.end()) {
            out.push_back(t);
        }
    }
    return out;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Accepted: return "ACCEPTED";
        case Verdict::RejectedEnd: return "REJECTED_END";
        case Verdict::RejectedStuck: return "REJECTED_STUCK";
    }
    return "UNKNOWN";
}

Configuration step_config(const FiniteAutomaton& a, const Configuration& c, const Symbol& x) {
    Configuration next{{}, c.consumed + 1};
    for (const auto& t : a.transitions) {
        if (t.on == x && c.active.contains(t.from)) next.active.insert(t.to);
    }
    return next;
}

Trace trace(const FiniteAutomaton& a, const Word& w) {
    Trace tr{w, {Configuration{{a.initial_state}, 0}}, Verdict::RejectedEnd};
    for (const auto& x : w) {
        tr.configs.push_back(step_config(a, tr.configs.back(), x));
        if (tr.configs.back().active.empty()) {
            tr.verdict = Verdict::RejectedStuck;
            return tr;
        }
    }
    const auto& last = tr.configs.back().active;
    const bool hit = std::any_of(last.begin(), last.end(),
                                 [&](const StateId& s) { return a.accept_states.contains(s); });
    tr.verdict = hit ? Verdict::Accepted : Verdict::RejectedEnd;
    return tr;
}

bool accepts(const FiniteAutomaton& a, const Word& w) {
    return trace(a, w).verdict == Verdict::Accepted;
}

std::string_view to_string(NatureKind k) {
    switch (k) {
        case NatureKind::Productive: return "productive";
        case NatureKind::Accessible: return "accessible";
        case NatureKind::Useful: return "useful";
    }
    return "unknown";
}

NatureKind parse_nature_kind(std::string_view text) {
    if (text == "productive") return NatureKind::Productive;
    if (text == "accessible") return NatureKind::Accessible;
    if (text == "useful") return NatureKind::Useful;
    throw Error(ErrorCode::UnknownKind,
                "kind must be one of productive, accessible, useful", std::string(text));
}

std::set<StateId> accessible_states(const FiniteAutomaton& a) {
    std::multimap<StateId, StateId> forward;
    for (const auto& t : a.transitions) forward.emplace(t.from, t.to);
    return reachable({a.initial_state}, forward);
}

std::set<StateId> productive_states(const FiniteAutomaton& a) {
    std::multimap<StateId, StateId> backward;
    for (const auto& t : a.transitions) backward.emplace(t.to, t.from);
    return reachable(a.accept_states, backward);
}

std::set<StateId> useful_states(const FiniteAutomaton& a) {
    const auto productive = productive_states(a);
    const auto accessible = accessible_states(a);
    std::set<StateId> both;
    std::set_intersection(productive.begin(), productive.end(), accessible.begin(),
                          accessible.end(), std::inserter(both, both.end()));
    return both;
}

std::set<StateId> states_of_nature(const FiniteAutomaton& a, NatureKind kind) {
    switch (kind) {
        case NatureKind::Productive: return productive_states(a);
        case NatureKind::Accessible: return accessible_states(a);
        case NatureKind::Useful: return useful_states(a);
    }
    return {};
}

FiniteAutomaton new_automaton(const StateId& initial, bool initial_is_accept) {
    require_name(initial);
    FiniteAutomaton a;
    a.initial_state = initial;
    if (initial_is_accept) a.accept_states.insert(initial);
    return a;
}

FiniteAutomaton add_transition(const FiniteAutomaton& a, const Transition& t) {
    require_name(t.from);
    require_name(t.to);
    if (!t.on.is_single()) {
        throw Error(ErrorCode::SymbolNotSingle,
                    "transition symbol must be exactly one character", t.on.glyph);
    }
    FiniteAutomaton out = a;
    if (std::find(out.transitions.begin(), out.transitions.end(), t) == out.transitions.end()) {
        out.transitions.push_back(t);
    }
    return out;
}

FiniteAutomaton mark_accept(const FiniteAutomaton& a, const StateId& s) {
    require_name(s);
    FiniteAutomaton out = a;
    out.accept_states.insert(s);
    return out;
}

FiniteAutomaton add_state(const FiniteAutomaton& a, const StateId& s) {
    require_name(s);
    FiniteAutomaton out = a;
    if (!state_set(a).contains(s)) out.declared_states.insert(s);
    return out;
}

}  // namespace oflat
