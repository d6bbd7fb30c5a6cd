#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "omega_reduce/automaton.hpp"
#include "omega_reduce/game_graph.hpp"
#include "omega_reduce/solver.hpp"
#include "omega_reduce/union_find.hpp"

namespace omega_reduce {

/// Set of ordered pairs (q, q'): q' *-simulates q.
struct SimulationRelation {
    GameFlavor flavor = GameFlavor::fair;
    std::uint32_t n_states = 0;
    std::vector<bool> pairs;  // row-major [q * n_states + q']

    bool contains(StateId q, StateId qd) const { return pairs[std::size_t(q) * n_states + qd]; }
    std::size_t size() const;
};

/// Reads the winning set of a completed fixed point: (q, q') is in the
/// relation iff the start vertex of the game from (q, q') has a finite
/// measure. For delayed graphs the start vertex carries bit 1 exactly when q
/// is final and q' is not.
SimulationRelation extract_relation(const ProgressMeasure& pm, const GameGraph& g);

/// Unordered pairs of distinct states that simulate each other, each reported
/// once as (smaller, larger) in lexicographic name order.
std::vector<std::pair<StateId, StateId>> candidate_merges(const SimulationRelation& rel,
                                                          const BuchiAutomaton& a);

/// Transitions (q, a, q') for which a parallel (q, a, ~q) with q' simulated
/// by ~q exists; lexicographic order.
std::vector<Transition> candidate_removals(const BuchiAutomaton& a, const SimulationRelation& rel);

/// Minimal transition set making q1 and q2 share the same in- and outgoing
/// possibilities once added.
std::vector<Transition> merge_closure_transitions(const BuchiAutomaton& a, StateId q1, StateId q2);

/// Which of an (name-ordered) candidate pair survives a merge: the second
/// state is dropped unless it is final while the first is not.
std::pair<StateId, StateId> merge_keep_rule(const BuchiAutomaton& a, StateId q1, StateId q2);

/// Adds the closure transitions for (keep, drop), then deletes drop with all
/// its transitions. The merged state is initial iff either input was.
BuchiAutomaton apply_merge(const BuchiAutomaton& a, StateId keep, StateId drop);

/// Switches a fair-built graph to its direct subgame, solves it with all-zero
/// priorities, extracts the direct relation and switches back.
SimulationRelation fair_direct_prepass(GameGraph& g, const SolverConfig& cfg = {});

enum class MinimizeMethod { fair, fair_direct, direct, delayed };
enum class Preprocess { none, dead_ends, nonlive };
enum class ApplicationMode { sequential, batch };

struct MinimizeOptions {
    bool scc = false;
    bool reuse = false;
    bool history = false;
    bool smart_init = false;
    bool fast_detect = false;
    bool equiv_classes = false;
    bool purge_unreachable = false;
};

struct MinimizeConfig {
    MinimizeMethod method = MinimizeMethod::fair_direct;
    MinimizeOptions opt;
    Preprocess preprocess = Preprocess::dead_ends;
    ApplicationMode mode = ApplicationMode::sequential;
    std::ostream* solver_trace = nullptr;
};

struct MinimizeStats {
    double elapsed_seconds = 0.0;
    std::uint32_t q_in = 0;
    std::uint32_t delta_in = 0;
    std::uint64_t game_vertices = 0;
    std::uint64_t game_edges = 0;
    Measure infinity_bound = 0;
    std::uint32_t states_removed = 0;
    std::optional<std::uint32_t> transitions_removed;  // empty for direct/delayed methods
    std::uint32_t attempts_merge = 0;
    std::uint32_t attempts_removal = 0;
    std::uint32_t accepted_merge = 0;
    std::uint32_t accepted_removal = 0;
};

struct MinimizeResult {
    BuchiAutomaton automaton;
    MinimizeStats stats;
    std::uint64_t closure_transitions_added = 0;  // sum over accepted merges
};

/// Checks merge and removal candidates against a live fair game graph,
/// keeping or undoing each modification. minimize() drives this; tests may
/// drive single candidates directly. The input must have no dead ends.
class FairMinimizer {
public:
    enum class Decision { accepted, rejected, accepted_by_class, untestable };

    FairMinimizer(const BuchiAutomaton& a, const MinimizeConfig& cfg);

    const BuchiAutomaton& automaton() const { return aut_; }
    const GameGraph& graph() const { return g_; }
    const ProgressMeasure& base_measure() const { return base_; }
    const MinimizeStats& stats() const { return stats_; }
    std::uint64_t closure_transitions_added() const { return closure_added_; }
    std::uint32_t applied_removals() const { return applied_removals_; }

    /// Fair relation over the current automaton's states.
    SimulationRelation relation() const;

    Decision try_merge(std::string_view q1, std::string_view q2);
    Decision try_remove(std::string_view src, std::string_view sym, std::string_view dst);

    /// Full candidate sweep (merges, then removals). Returns false when a
    /// batch run failed its final composite verification; the caller then
    /// reruns sequentially on a fresh instance.
    bool run();

private:
    bool reuse_active() const;
    SolveResult resolve(GraphDelta& delta);
    bool winning_sets_match(const ProgressMeasure& fresh) const;
    void rebuild_live();
    SimulationRelation relation_on(const BuchiAutomaton& target) const;
    bool run_sequential();
    bool run_batch();

    MinimizeConfig cfg_;
    BuchiAutomaton aut_;   // current automaton value
    BuchiAutomaton aut0_;  // as handed to the constructor (union-find id space)
    GameGraph g_;
    ProgressMeasure base_;
    UnionFind uf_;
    MinimizeStats stats_;
    std::uint64_t closure_added_ = 0;
    std::uint32_t applied_removals_ = 0;
};

MinimizeResult minimize(const BuchiAutomaton& a, const MinimizeConfig& cfg = {});

}  // namespace omega_reduce
