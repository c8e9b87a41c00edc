#pragma once

// Test-only reference implementations. None of these call into the library's
// algorithms; they work directly on the transition list.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oflat/automaton.hpp"

namespace oflat::testing {

inline FiniteAutomaton m1() {
    return FiniteAutomaton{"START",
                           {{"START", "a", "A"},
                            {"A", "b", "B"},
                            {"B", "a", "C"},
                            {"C", "b", "B"},
                            {"C", "a", "A"}},
                           {"START", "B", "C"},
                           {}};
}

// M1 plus a dead end D reached from A on 'a'.
inline FiniteAutomaton m3() {
    auto a = m1();
    a.transitions.push_back({"A", "a", "D"});
    return a;
}

// Every (state, symbol) successor list, scanned from the raw transitions.
inline std::vector<std::string> successors(const FiniteAutomaton& a, const std::string& s,
                                           const std::string& x) {
    std::vector<std::string> out;
    for (const auto& t : a.transitions) {
        if (t.from == s && t.on.glyph == x) out.push_back(t.to);
    }
    return out;
}

// Enumerates every transition path of length |w| from the initial state.
inline bool brute_force_accepts(const FiniteAutomaton& a, const std::string& w) {
    std::function<bool(const std::string&, std::size_t)> walk = [&](const std::string& s,
                                                                     std::size_t i) {
        if (i == w.size()) return a.accept_states.count(s) > 0;
        for (const auto& t : a.transitions) {
            if (t.from == s && t.on.glyph.size() == 1 && t.on.glyph[0] == w[i] && walk(t.to, i + 1)) {
                return true;
            }
        }
        return false;
    };
    return walk(a.initial_state, 0);
}

inline bool brute_force_deterministic(const FiniteAutomaton& a) {
    for (const auto& t : a.transitions) {
        for (const auto& u : a.transitions) {
            if (t.from == u.from && t.on == u.on && t.to != u.to) return false;
        }
    }
    return true;
}

// Fixed-point closure: repeat full passes over the transition list until no
// state is added. `backward` follows edges against their direction.
inline std::set<std::string> closure(const FiniteAutomaton& a, std::set<std::string> seeds,
                                     bool backward) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& t : a.transitions) {
            const auto& src = backward ? t.to : t.from;
            const auto& dst = backward ? t.from : t.to;
            if (seeds.count(src) && !seeds.count(dst)) {
                seeds.insert(dst);
                grew = true;
            }
        }
    }
    return seeds;
}

inline std::set<std::string> oracle_accessible(const FiniteAutomaton& a) {
    return closure(a, {a.initial_state}, false);
}

inline std::set<std::string> oracle_productive(const FiniteAutomaton& a) {
    return closure(a, a.accept_states, true);
}

inline std::set<std::string> oracle_useful(const FiniteAutomaton& a) {
    const auto p = oracle_productive(a);
    std::set<std::string> out;
    for (const auto& s : oracle_accessible(a)) {
        if (p.count(s)) out.insert(s);
    }
    return out;
}

// All words over {a, b} of length 0..max_len.
inline std::vector<std::string> all_binary_words(std::size_t max_len) {
    std::vector<std::string> words{""};
    std::vector<std::string> frontier{""};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& w : frontier) {
            next.push_back(w + "a");
            next.push_back(w + "b");
        }
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return words;
}

// Random automaton with 1..max_states states q0.., alphabet {a, b}. Each
// (state, symbol, target) triple is present with probability `density`,
// accept states are an independent coin flip each, and some states may be
// declared without transitions.
inline FiniteAutomaton random_automaton(std::mt19937_64& rng, int max_states = 6,
                                        double density = 0.25) {
    std::uniform_int_distribution<int> count(1, max_states);
    std::bernoulli_distribution edge(density);
    std::bernoulli_distribution coin(0.35);
    const int n = count(rng);
    auto name = [](int i) { return "q" + std::to_string(i); };

    FiniteAutomaton a;
    a.initial_state = name(std::uniform_int_distribution<int>(0, n - 1)(rng));
    for (int from = 0; from < n; ++from) {
        for (const char* x : {"a", "b"}) {
            for (int to = 0; to < n; ++to) {
                if (edge(rng)) a.transitions.push_back({name(from), x, name(to)});
            }
        }
    }
    std::shuffle(a.transitions.begin(), a.transitions.end(), rng);
    for (int i = 0; i < n; ++i) {
        if (coin(rng)) a.accept_states.insert(name(i));
        if (coin(rng)) a.declared_states.insert(name(i));
    }
    return a;
}

inline std::string random_binary_word(std::mt19937_64& rng, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::bernoulli_distribution coin(0.5);
    std::string w(len(rng), 'a');
    for (auto& c : w) c = coin(rng) ? 'a' : 'b';
    return w;
}

}  // namespace oflat::testing
