#pragma once

// Small automata used across the test suites. Each one is built to exhibit a
// specific behavior; the tests verify the claimed properties rather than
// assuming them.

#include "omega_reduce/automaton.hpp"
#include "omega_reduce/game_graph.hpp"

namespace fixtures {

using namespace omega_reduce;

/// Two states that fairly simulate each other but cannot be merged without
/// changing the language {(b*a)^w}. Initial and final state q0.
inline const char* kTwoStateLoopBa = "q0\na,q0->q0\nb,q0->q1\nb,q1->q1\na,q1->q0\nq0\n";

inline BuchiAutomaton two_state_loop() { return parse_ba(kTwoStateLoopBa); }

/// The closure set that would make q0 and q1 of two_state_loop interchangeable.
inline std::vector<Transition> two_state_loop_closure(const BuchiAutomaton& a) {
    auto t = [&](const char* s, const char* sy, const char* d) {
        return Transition{a.state_id(s), a.symbol_id(sy), a.state_id(d)};
    };
    return {t("q0", "a", "q1"), t("q1", "a", "q1"), t("q0", "b", "q0"), t("q1", "b", "q0")};
}

/// Total two-state automaton with language {b^w}. q0 simulates q1 (q1 never
/// accepts anything) but not the other way around: q1 cannot reach the final
/// state q0, so the game starting at (q0,q1) is lost for Duplicator.
inline BuchiAutomaton b_omega_pair() {
    BuchiAutomaton::Builder b;
    b.mark_initial("q0").mark_final("q0");
    b.add_transition("q0", "b", "q0");
    b.add_transition("q0", "a", "q1");
    b.add_transition("q1", "a", "q1");
    b.add_transition("q1", "b", "q1");
    return b.build();
}

/// Five states, two accepting lassos (a^w and a(ba)^w) and a dead end q5
/// reachable via "ab".
inline BuchiAutomaton five_state_runs() {
    BuchiAutomaton::Builder b;
    b.mark_initial("q1").mark_final("q2").mark_final("q4");
    b.add_transition("q1", "a", "q2");
    b.add_transition("q2", "a", "q2");
    b.add_transition("q1", "a", "q3");
    b.add_transition("q3", "b", "q4");
    b.add_transition("q4", "a", "q3");
    b.add_transition("q3", "b", "q5");
    return b.build();
}

/// Four states over {a,b} with language {(ab)^w}; the transition (q0,a,q1) is
/// redundant because (q0,a,q2) exists and q2 covers everything q1 offers.
inline BuchiAutomaton square_redundant() {
    BuchiAutomaton::Builder b;
    b.mark_initial("q0").mark_final("q0");
    b.add_transition("q0", "a", "q1");
    b.add_transition("q0", "a", "q2");
    b.add_transition("q1", "b", "q0");
    b.add_transition("q2", "b", "q0");
    b.add_transition("q2", "a", "q3");
    b.add_transition("q3", "a", "q3");
    return b.build();
}

/// Two parallel three-state lanes around an accepting hub qb plus a non-live
/// trap qa: qb -c-> {ql1,qr1}, each lane runs -c-> twice, then -b-> qb or -a-> qa.
/// The right lane is accepting throughout, the left lane is not, so the lane
/// pairs (ql_i, qr_i) fairly simulate each other yet no lane pair is mutually
/// delayed-similar while qa is present. Language: {(cccb)^w}.
inline BuchiAutomaton three_lane_ring() {
    BuchiAutomaton::Builder b;
    b.mark_initial("qb");
    for (const char* f : {"qb", "qr1", "qr2", "qr3"}) b.mark_final(f);
    b.add_transition("qb", "c", "qr1");
    b.add_transition("qb", "c", "ql1");
    b.add_transition("qr1", "c", "qr2");
    b.add_transition("qr2", "c", "qr3");
    b.add_transition("qr3", "b", "qb");
    b.add_transition("qr3", "a", "qa");
    b.add_transition("ql1", "c", "ql2");
    b.add_transition("ql2", "c", "ql3");
    b.add_transition("ql3", "b", "qb");
    b.add_transition("ql3", "a", "qa");
    b.add_transition("qa", "c", "qa");
    return b.build();
}

/// Nine states with two mutually fair (not mutually delayed) pairs (q1,q4)
/// and (q8,q9), and a redundant transition (q1,a,q3) whose removal strands
/// q3 and q5.
inline BuchiAutomaton nine_state_mergeable() {
    BuchiAutomaton::Builder b;
    b.mark_initial("q7");
    for (const char* f : {"q1", "q7", "q8"}) b.mark_final(f);
    b.add_transition("q7", "a", "q1");
    b.add_transition("q7", "a", "q4");
    b.add_transition("q1", "a", "q2");
    b.add_transition("q1", "a", "q3");
    b.add_transition("q4", "a", "q2");
    b.add_transition("q2", "b", "q8");
    b.add_transition("q2", "b", "q9");
    b.add_transition("q2", "a", "q6");
    b.add_transition("q3", "a", "q5");
    b.add_transition("q5", "b", "q5");
    b.add_transition("q6", "b", "q6");
    b.add_transition("q6", "a", "q7");
    b.add_transition("q8", "b", "q7");
    b.add_transition("q8", "a", "q6");
    b.add_transition("q9", "b", "q7");
    b.add_transition("q9", "a", "q6");
    return b.build();
}

/// Hand-assembled arena where a Duplicator-response vertex dodges an update
/// by switching to the alternative successor that stays finite: (q0,q1) and
/// (q0,q1,a) pump each other to infinity while (q0,q3,a) settles at 1 thanks
/// to (q0,q2).
struct WorklistArena {
    GameGraph graph;
    VertexId a;   // (q0,q1)   V1, priority 1
    VertexId b;   // (q0,q2)   V1, priority 1
    VertexId w;   // (q0,q3,a) V0, succ {a, b}
    VertexId x;   // (q0,q1,a) V0, loop partner of a
    VertexId g0;  // (q0,q2,a) V0, escape chain
    VertexId h;   // (q0,q4)   V1, priority 0 anchor
};

inline WorklistArena worklist_arena() {
    BuchiAutomaton::Builder nb;
    nb.mark_initial("q0").mark_final("q4");
    nb.add_symbol("a").add_symbol("b");
    for (const char* s : {"q0", "q1", "q2", "q3", "q4"}) nb.add_state(s);
    BuchiAutomaton names = nb.build();

    const StateId q0 = names.state_id("q0"), q1 = names.state_id("q1"),
                  q2 = names.state_id("q2"), q3 = names.state_id("q3"),
                  q4 = names.state_id("q4");
    const SymbolId sa = names.symbol_id("a");

    std::vector<VertexRec> verts = {
        {q0, q1, kNoId, kNoBit, 1, false, true},  // 0: A
        {q0, q2, kNoId, kNoBit, 1, false, true},  // 1: B
        {q0, q4, kNoId, kNoBit, 0, false, true},  // 2: H
        {q0, q3, sa, kNoBit, 2, true, true},      // 3: W
        {q0, q1, sa, kNoBit, 2, true, true},      // 4: X
        {q0, q2, sa, kNoBit, 2, true, true},      // 5: G0
    };
    std::vector<std::pair<VertexId, VertexId>> edges = {
        {0, 4}, {4, 0},  // A <-> X
        {1, 5}, {5, 2},  // B -> G0 -> H
        {2, 5},          // H -> G0
        {3, 0}, {3, 1},  // W -> {A, B}
    };
    WorklistArena out{GameGraph::assemble(names, names, GameFlavor::fair, verts, edges),
                      0, 1, 3, 4, 5, 2};
    return out;
}

}  // namespace fixtures
