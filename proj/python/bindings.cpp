#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <tuple>

#include "oflat/automaton.hpp"
#include "oflat/document.hpp"
#include "oflat/error.hpp"
#include "oflat/simulation.hpp"

namespace py = pybind11;
using namespace oflat;

namespace {

using TripleList = std::vector<std::tuple<std::string, std::string, std::string>>;

TripleList triples(const FiniteAutomaton& a) {
    TripleList out;
    for (const auto& t : a.transitions) out.emplace_back(t.from, t.on.glyph, t.to);
    return out;
}

std::vector<std::string> glyphs(const std::set<Symbol>& symbols) {
    std::vector<std::string> out;
    for (const auto& x : symbols) out.push_back(x.glyph);
    return out;
}

py::dict color_dict(const StateColoring& colors) {
    py::dict out;
    for (const auto& [s, c] : colors) out[py::str(s)] = std::string(to_string(c));
    return out;
}

py::dict view_dict(const SimulationSession& s) {
    const auto v = s.view();
    py::dict out;
    out["position"] = s.position();
    out["remaining"] = v.remaining;
    out["colors"] = color_dict(v.colors);
    out["status"] = std::string(to_string(s.status()));
    out["wordView"] = s.word_view();
    out["caption"] = v.caption;
    if (s.status() == SessionStatus::Finished) {
        out["verdict"] = std::string(to_string(s.trace().verdict));
    }
    return out;
}

Color parse_color(const std::string& name) {
    if (name == "BLUE") return Color::Blue;
    if (name == "GREEN") return Color::Green;
    if (name == "RED") return Color::Red;
    return Color::Plain;
}

}  // namespace

PYBIND11_MODULE(_oflat, m) {
    m.doc() = "Finite automaton workbench: acceptance, stepping sessions and state natures.";

    static py::exception<Error> error_type(m, "OflatError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.what(), e.detail());
            PyErr_SetObject(error_type.ptr(), args.ptr());
        }
    });

    py::class_<FiniteAutomaton>(m, "FiniteAutomaton")
        .def(py::init([](const std::string& initial, const TripleList& transitions,
                         const std::set<std::string>& accept, const std::set<std::string>& states) {
                 FiniteAutomaton a;
                 a.initial_state = initial;
                 for (const auto& [f, s, t] : transitions) {
                     a = add_transition(a, Transition{f, Symbol(s), t});
                 }
                 a.accept_states = accept;
                 a.declared_states = states;
                 require_valid(a);
                 return a;
             }),
             py::arg("initial_state"), py::arg("transitions") = TripleList{},
             py::arg("accept_states") = std::set<std::string>{},
             py::arg("states") = std::set<std::string>{})
        .def_property_readonly("initial_state", [](const FiniteAutomaton& a) { return a.initial_state; })
        .def_property_readonly("transitions", &triples)
        .def_property_readonly("accept_states", [](const FiniteAutomaton& a) { return a.accept_states; })
        .def_property_readonly("states", &state_set)
        .def_property_readonly("alphabet", [](const FiniteAutomaton& a) { return glyphs(alphabet(a)); })
        .def("is_deterministic", &is_deterministic)
        .def("accepts", [](const FiniteAutomaton& a, const std::string& w) { return accepts(a, make_word(w)); })
        .def("trace",
             [](const FiniteAutomaton& a, const std::string& w) {
                 const auto tr = trace(a, make_word(w));
                 py::list configs;
                 for (const auto& c : tr.configs) configs.append(py::make_tuple(c.active, c.consumed));
                 return py::make_tuple(configs, std::string(to_string(tr.verdict)));
             },
             "Returns ([(active_states, consumed), ...], verdict).")
        .def("accessible_states", &accessible_states)
        .def("productive_states", &productive_states)
        .def("useful_states", &useful_states)
        .def("with_transition",
             [](const FiniteAutomaton& a, const std::string& f, const std::string& s, const std::string& t) {
                 return add_transition(a, Transition{f, Symbol(s), t});
             })
        .def("with_accept", &mark_accept)
        .def("with_state", &add_state)
        .def("to_json", [](const FiniteAutomaton& a) { return serialize_automaton(a); })
        .def("to_dot",
             [](const FiniteAutomaton& a, const std::map<std::string, std::string>& colors) {
                 StateColoring coloring;
                 for (const auto& [s, c] : colors) coloring[s] = parse_color(c);
                 return export_dot(a, coloring);
             },
             py::arg("colors") = std::map<std::string, std::string>{})
        .def(py::self == py::self)
        .def("__repr__", [](const FiniteAutomaton& a) {
            return "<FiniteAutomaton initial=" + a.initial_state + " transitions=" +
                   std::to_string(a.transitions.size()) + ">";
        });

    m.def("new_automaton", &new_automaton, py::arg("initial"), py::arg("accept") = false);
    m.def("parse_automaton", [](const std::string& text) { return parse_automaton(text); });
    m.def("examples", [] {
        std::map<std::string, FiniteAutomaton> out;
        for (const auto& doc : list_examples()) out.emplace(*doc.name, doc.automaton);
        return out;
    });

    py::class_<SimulationSession>(m, "Session")
        .def(py::init([](const FiniteAutomaton& a, const std::string& w) {
                 return SimulationSession(a, make_word(w));
             }),
             py::arg("automaton"), py::arg("word"))
        .def_property_readonly("position", &SimulationSession::position)
        .def_property_readonly("finished",
                               [](const SimulationSession& s) { return s.status() == SessionStatus::Finished; })
        .def("forward", &SimulationSession::step_forward)
        .def("back", &SimulationSession::step_back)
        .def("view", &view_dict)
        .def(
            "run",
            [](SimulationSession& s, const std::function<void(int, py::dict)>& tick, int delay_ms) {
                s.run_all(
                    [&](std::size_t pos, const ColorView&) {
                        if (tick) tick(static_cast<int>(pos), view_dict(s));
                    },
                    std::chrono::milliseconds(delay_ms));
                return view_dict(s);
            },
            py::arg("tick") = nullptr, py::arg("delay_ms") = 0);
}
