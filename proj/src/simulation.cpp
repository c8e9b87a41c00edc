#include "oflat/simulation.hpp"

#include <thread>
#include <utility>

#include "oflat/error.hpp"

namespace oflat {

namespace {

constexpr std::string_view kSeparator = "·";

void paint(StateColoring& colors, const std::set<StateId>& states, Color c) {
    for (const auto& s : states) colors[s] = c;
}

}  // namespace

std::string_view to_string(Color c) {
    switch (c) {
        case Color::Plain: return "PLAIN";
        case Color::Blue: return "BLUE";
        case Color::Green: return "GREEN";
        case Color::Red: return "RED";
    }
    return "PLAIN";
}

std::string_view to_string(SessionStatus s) {
    return s == SessionStatus::Finished ? "FINISHED" : "RUNNING";
}

SimulationSession::SimulationSession(FiniteAutomaton automaton, Word sentence)
    : automaton_(std::move(automaton)), sentence_(std::move(sentence)) {
    try {
        require_valid(automaton_);
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidAutomaton, e.what(),
                    std::string(to_string(e.code())) + " at " + e.detail());
    }
    trace_ = oflat::trace(automaton_, sentence_);
}

SessionStatus SimulationSession::status() const {
    return position_ == last_position() ? SessionStatus::Finished : SessionStatus::Running;
}

bool SimulationSession::step_forward() {
    if (position_ == last_position()) return false;
    ++position_;
    return true;
}

bool SimulationSession::step_back() {
    if (position_ == 0) return false;
    --position_;
    return true;
}

void SimulationSession::run_all(const Tick& tick, std::chrono::milliseconds delay) {
    while (step_forward()) {
        if (tick) tick(position_, view());
        if (position_ != last_position() && delay.count() > 0) {
            std::this_thread::sleep_for(delay);
        }
    }
}

ColorView SimulationSession::view_at(std::size_t position) const {
    const auto& config = trace_.configs.at(position);
    ColorView v;
    v.remaining = sentence_.size() - config.consumed;

    if (position != last_position()) {
        paint(v.colors, config.active, Color::Blue);
        if (position < sentence_.size()) {
            v.caption = "reading '" + sentence_[config.consumed].glyph + "', " +
                        std::to_string(v.remaining) + " left";
        }
        return v;
    }

    switch (trace_.verdict) {
        case Verdict::Accepted:
            for (const auto& s : config.active) {
                v.colors[s] = automaton_.accept_states.contains(s) ? Color::Green : Color::Blue;
            }
            v.caption = "accepted";
            break;
        case Verdict::RejectedEnd:
            paint(v.colors, config.active, Color::Red);
            v.caption = "rejected: word ended outside an accept state";
            break;
        case Verdict::RejectedStuck:
            // The stuck configuration is empty; blame the states it came from.
            paint(v.colors, trace_.configs[position - 1].active, Color::Red);
            v.caption = "rejected: no transition on '" +
                        sentence_[trace_.configs[position - 1].consumed].glyph + "'";
            break;
    }
    return v;
}

std::string SimulationSession::word_view() const {
    const auto consumed = current().consumed;
    std::string out;
    for (std::size_t i = 0; i < sentence_.size(); ++i) {
        if (i == consumed) out += kSeparator;
        out += sentence_[i].glyph;
    }
    if (consumed == sentence_.size()) out += kSeparator;
    return out;
}

SimulationSession start_session(const FiniteAutomaton& a, const Word& w) {
    return SimulationSession(a, w);
}

StateColoring final_coloring(const FiniteAutomaton& a, const Word& w) {
    SimulationSession session(a, w);
    return session.view_at(session.last_position()).colors;
}

}  // namespace oflat
