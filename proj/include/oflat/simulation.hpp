#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "oflat/automaton.hpp"

namespace oflat {

enum class Color { Plain, Blue, Green, Red };
std::string_view to_string(Color c);

// Only non-plain states are listed; absent states render plain.
using StateColoring = std::map<StateId, Color>;

struct ColorView {
    StateColoring colors;
    std::size_t remaining = 0;
    std::string caption;

    bool operator==(const ColorView&) const = default;
};

enum class SessionStatus { Running, Finished };
std::string_view to_string(SessionStatus s);

// Cursor over a precomputed trace. Every view is a function of position
// alone, so stepping back is exact undo. Not safe for concurrent mutation.
class SimulationSession {
public:
    // Throws the validation error (INVALID_AUTOMATON family) on bad input.
    SimulationSession(FiniteAutomaton automaton, Word sentence);

    const FiniteAutomaton& automaton() const { return automaton_; }
    const Word& sentence() const { return sentence_; }
    const Trace& trace() const { return trace_; }
    std::size_t position() const { return position_; }
    std::size_t last_position() const { return trace_.configs.size() - 1; }
    SessionStatus status() const;
    const Configuration& current() const { return trace_.configs[position_]; }

    // Both saturate: forward at the end and back at zero are no-ops.
    // Return whether the position moved.
    bool step_forward();
    bool step_back();

    using Tick = std::function<void(std::size_t position, const ColorView& view)>;
    // Advances to the end, calling `tick` after each step and sleeping
    // `delay` between steps. The delay never changes the outcome.
    void run_all(const Tick& tick,
                 std::chrono::milliseconds delay = std::chrono::milliseconds{500});

    ColorView view() const { return view_at(position_); }
    ColorView view_at(std::size_t position) const;
    // Sentence split at the consumed count, e.g. "a·ba".
    std::string word_view() const;

    bool operator==(const SimulationSession&) const = default;

private:
    FiniteAutomaton automaton_;
    Word sentence_;
    Trace trace_;
    std::size_t position_ = 0;
};

SimulationSession start_session(const FiniteAutomaton& a, const Word& w);

// Coloring of the final configuration of `w`, as the end of a session shows it.
StateColoring final_coloring(const FiniteAutomaton& a, const Word& w);

}  // namespace oflat
