#include <doctest.h>

#include <random>

#include "oflat/automaton.hpp"
#include "oflat/error.hpp"
#include "support/oracles.hpp"

using namespace oflat;
using oflat::testing::m1;
using oflat::testing::m3;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an oflat::Error");
    return ErrorCode::MalformedDocument;
}

std::set<StateId> S(std::initializer_list<StateId> xs) { return xs; }

}  // namespace

TEST_SUITE("automaton") {

TEST_CASE("validate") {
    CHECK(validate(m1()).empty());

    FiniteAutomaton z = m1();
    z.accept_states.insert("Z");
    CHECK(validate(z).empty());
    CHECK(state_set(z).contains("Z"));

    FiniteAutomaton bad{"A", {{"A", "ab", "B"}}, {}, {}};
    const auto report = validate(bad);
    REQUIRE(report.size() == 1);
    CHECK(report[0].code() == "SYMBOL_NOT_SINGLE");

    FiniteAutomaton empty_name{"", {{"A", "", " B"}}, {}, {}};
    const auto r2 = validate(empty_name);
    REQUIRE(r2.size() == 3);
    CHECK(r2[0].code() == "EMPTY_STATE_NAME");
    CHECK(r2[1].code() == "SYMBOL_NOT_SINGLE");
    CHECK(r2[2].code() == "INVALID_STATE_NAME");
}

TEST_CASE("symbols are single unicode scalars") {
    CHECK(Symbol("a").is_single());
    CHECK(Symbol("é").is_single());
    CHECK(Symbol("€").is_single());
    CHECK(Symbol("😀").is_single());
    CHECK_FALSE(Symbol("").is_single());
    CHECK_FALSE(Symbol("ab").is_single());
    CHECK_FALSE(Symbol("\xC3").is_single());
    CHECK_FALSE(Symbol("\xC0\x80").is_single());  // overlong NUL
    CHECK_FALSE(Symbol("\xED\xA0\x80").is_single());  // surrogate

    CHECK(make_word("aéb").size() == 3);
    CHECK(to_text(make_word("aéb")) == "aéb");
    CHECK(make_word("").empty());
    CHECK(code_of([] { make_word("a\xFF"); }) == ErrorCode::InvalidWord);
}

TEST_CASE("state_set") {
    CHECK(state_set(m1()) == S({"A", "B", "C", "START"}));
    CHECK(state_set(new_automaton("S", false)) == S({"S"}));
    auto with_d = m1();
    with_d.declared_states.insert("D");
    CHECK(state_set(with_d) == S({"A", "B", "C", "D", "START"}));
}

TEST_CASE("alphabet") {
    CHECK(alphabet(m1()) == std::set<Symbol>{"a", "b"});
    CHECK(alphabet(new_automaton("S", false)).empty());
    FiniteAutomaton dup{"S", {{"S", "a", "S"}, {"S", "a", "S"}}, {}, {}};
    CHECK(alphabet(dup) == std::set<Symbol>{"a"});
}

TEST_CASE("is_deterministic") {
    CHECK(testing::brute_force_deterministic(m1()));
    CHECK(is_deterministic(m1()));
    auto nd = m1();
    nd.transitions.push_back({"START", "a", "B"});
    CHECK_FALSE(is_deterministic(nd));
    CHECK(is_deterministic(new_automaton("S", false)));
    // Partial but single-valued.
    CHECK(is_deterministic(FiniteAutomaton{"S", {{"S", "a", "T"}}, {}, {}}));
}

TEST_CASE("transitions_for") {
    CHECK(transitions_for(m1(), "START", "a") == std::vector<Transition>{{"START", "a", "A"}});
    CHECK(testing::successors(m1(), "START", "b").empty());
    CHECK(transitions_for(m1(), "START", "b").empty());
    CHECK(transitions_for(m1(), "C", "a") == std::vector<Transition>{{"C", "a", "A"}});
    CHECK(code_of([] { transitions_for(m1(), "NOPE", "a"); }) == ErrorCode::UnknownState);
}

TEST_CASE("step_config") {
    CHECK(step_config(m1(), {{"START"}, 0}, "a") == Configuration{{"A"}, 1});
    CHECK(step_config(m1(), {{"START"}, 0}, "b") == Configuration{{}, 1});
    FiniteAutomaton n1{"S", {{"S", "a", "P"}, {"S", "a", "Q"}}, {}, {}};
    CHECK(step_config(n1, {{"S"}, 0}, "a") == Configuration{{"P", "Q"}, 1});
}

TEST_CASE("accepts") {
    CHECK(accepts(m1(), make_word("aba")));
    CHECK_FALSE(accepts(m1(), make_word("abaa")));
    CHECK(m1().accept_states.contains(m1().initial_state));
    CHECK(accepts(m1(), make_word("")));
    CHECK_FALSE(accepts(m1(), make_word("b")));
    // Symbols outside the alphabet simply get stuck.
    CHECK_FALSE(accepts(m1(), make_word("az")));
}

TEST_CASE("trace") {
    const auto aba = trace(m1(), make_word("aba"));
    CHECK(aba.configs == std::vector<Configuration>{
                             {{"START"}, 0}, {{"A"}, 1}, {{"B"}, 2}, {{"C"}, 3}});
    CHECK(aba.verdict == Verdict::Accepted);

    const auto empty = trace(m1(), make_word(""));
    CHECK(empty.configs == std::vector<Configuration>{{{"START"}, 0}});
    CHECK(empty.verdict == Verdict::Accepted);

    const auto b = trace(m1(), make_word("b"));
    CHECK(b.configs == std::vector<Configuration>{{{"START"}, 0}, {{}, 1}});
    CHECK(b.verdict == Verdict::RejectedStuck);

    CHECK(trace(m1(), make_word("abaa")).verdict == Verdict::RejectedEnd);
    // Stuck in the middle stops the trace early.
    const auto bab = trace(m1(), make_word("bab"));
    CHECK(bab.configs.size() == 2);
    CHECK(bab.verdict == Verdict::RejectedStuck);
}

TEST_CASE("nature of states") {
    CHECK(testing::oracle_accessible(m1()) == S({"START", "A", "B", "C"}));
    CHECK(accessible_states(m1()) == S({"START", "A", "B", "C"}));
    CHECK(testing::oracle_productive(m1()) == S({"START", "A", "B", "C"}));
    CHECK(productive_states(m1()) == S({"START", "A", "B", "C"}));
    CHECK(useful_states(m1()) == S({"START", "A", "B", "C"}));

    auto m2 = add_state(m1(), "X");
    CHECK_FALSE(accessible_states(m2).contains("X"));
    CHECK(accessible_states(new_automaton("S", false)) == S({"S"}));

    CHECK_FALSE(productive_states(m3()).contains("D"));
    CHECK(accessible_states(m3()).contains("D"));
    CHECK(testing::oracle_useful(m3()) == S({"START", "A", "B", "C"}));
    CHECK(useful_states(m3()) == S({"START", "A", "B", "C"}));

    FiniteAutomaton no_accept{"S", {{"S", "a", "T"}}, {}, {}};
    CHECK(productive_states(no_accept).empty());
    CHECK(useful_states(no_accept).empty());

    CHECK(states_of_nature(m3(), parse_nature_kind("useful")) == useful_states(m3()));
    CHECK(code_of([] { parse_nature_kind("bogus"); }) == ErrorCode::UnknownKind);
}

TEST_CASE("new_automaton") {
    const auto s = new_automaton("S", false);
    CHECK(state_set(s) == S({"S"}));
    CHECK(s.accept_states.empty());
    CHECK(new_automaton("S", true).accept_states == S({"S"}));
    CHECK(code_of([] { new_automaton("", true); }) == ErrorCode::EmptyStateName);
    CHECK(code_of([] { new_automaton(" S", true); }) == ErrorCode::InvalidStateName);
}

TEST_CASE("add_transition") {
    const auto loop = add_transition(new_automaton("S", false), {"S", "a", "S"});
    CHECK(loop.transitions == std::vector<Transition>{{"S", "a", "S"}});
    CHECK(add_transition(m1(), {"START", "a", "A"}) == m1());
    CHECK(add_transition(m1(), {"C", "b", "B"}) == m1());
    CHECK(code_of([] { add_transition(m1(), {"A", "ab", "B"}); }) == ErrorCode::SymbolNotSingle);
    CHECK(code_of([] { add_transition(m1(), {"A", "a", ""}); }) == ErrorCode::EmptyStateName);
}

TEST_CASE("mark_accept") {
    CHECK(mark_accept(m1(), "A").accept_states == S({"START", "A", "B", "C"}));
    CHECK(mark_accept(m1(), "B") == m1());
    CHECK(mark_accept(new_automaton("S", false), "S") == new_automaton("S", true));
    CHECK(code_of([] { mark_accept(m1(), ""); }) == ErrorCode::EmptyStateName);
}

TEST_CASE("add_state") {
    const auto d = add_state(m1(), "D");
    CHECK(state_set(d).contains("D"));
    CHECK_FALSE(accessible_states(d).contains("D"));
    CHECK(add_state(m1(), "A") == m1());
    CHECK(code_of([] { add_state(m1(), ""); }) == ErrorCode::EmptyStateName);
}

TEST_CASE("properties on random automata") {
    std::mt19937_64 rng(20261015);
    const auto words = testing::all_binary_words(5);
    for (int round = 0; round < 300; ++round) {
        const auto a = testing::random_automaton(rng);
        const auto before = a;
        const bool det = is_deterministic(a);
        CHECK(det == testing::brute_force_deterministic(a));

        for (const auto& w : words) {
            const auto word = make_word(w);
            const auto tr = trace(a, word);
            REQUIRE(accepts(a, word) == testing::brute_force_accepts(a, w));
            CHECK((tr.verdict == Verdict::Accepted) == accepts(a, word));
            CHECK(tr.configs.front() == Configuration{{a.initial_state}, 0});
            for (std::size_t i = 0; i + 1 < tr.configs.size(); ++i) {
                CHECK(tr.configs[i + 1] == step_config(a, tr.configs[i], word[i]));
            }
            if (det) {
                for (const auto& c : tr.configs) CHECK(c.active.size() <= 1);
            }
            if (tr.verdict == Verdict::RejectedStuck) {
                CHECK(tr.configs.back().active.empty());
                CHECK(tr.configs[tr.configs.size() - 2].consumed < word.size());
            } else {
                CHECK(tr.configs.back().consumed == word.size());
            }
        }

        CHECK(accessible_states(a) == testing::oracle_accessible(a));
        CHECK(productive_states(a) == testing::oracle_productive(a));
        CHECK(useful_states(a) == testing::oracle_useful(a));
        CHECK(accessible_states(a).contains(a.initial_state));

        // Edit algebra.
        const Transition t{"q0", "b", "q1"};
        const auto once = add_transition(a, t);
        CHECK(add_transition(once, t) == once);
        const auto states = state_set(a);
        for (const auto& s : states) CHECK(state_set(once).contains(s));
        const auto marked = mark_accept(a, "q0");
        CHECK(mark_accept(marked, "q0") == marked);
        CHECK(productive_states(marked).contains("q0"));
        CHECK(a == before);
    }
}

}  // TEST_SUITE
