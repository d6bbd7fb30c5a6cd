#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "omega_reduce/game_graph.hpp"
#include "omega_reduce/measure.hpp"

namespace omega_reduce {

/// Per-vertex progress measures plus the cached best-neighbor measure and
/// best-neighbor count the working-list algorithm maintains.
struct ProgressMeasure {
    Measure n = 0;  // number of priority-1 vertices; finite values range over 0..n
    std::vector<Measure> mu;
    std::vector<Measure> best;
    std::vector<std::uint32_t> count;
};

enum class WorkOrder { fifo, max_measure_first };

struct SolverConfig {
    bool use_scc_bounds = false;
    WorkOrder work_order = WorkOrder::fifo;
    /// When set, solving aborts as soon as a vertex that is finite in the
    /// reference reaches infinity; the partial result is flagged diverged.
    const ProgressMeasure* reference_measure = nullptr;
    std::ostream* trace = nullptr;
};

struct SolveStats {
    std::uint64_t pops = 0;
    std::vector<std::uint32_t> list_entries;  // pushes per vertex
    std::uint32_t max_list_entries = 0;
};

struct SolveResult {
    ProgressMeasure measure;
    bool diverged = false;
    SolveStats stats;
};

/// Best reachable measure among successors: min for Duplicator-response
/// vertices, max for Spoiler-turn vertices. Dead ends read as infinity; in
/// these arenas a stuck position is always one Duplicator has lost.
Measure best_nghb_ms(const ProgressMeasure& pm, const GameGraph& g, VertexId v);

/// Number of successors realizing best_nghb_ms.
std::uint32_t nghb_cnt(const ProgressMeasure& pm, const GameGraph& g, VertexId v);

/// Single-vertex lift: copies pm and recomputes mu(u).
ProgressMeasure lift(const ProgressMeasure& pm, const GameGraph& g, VertexId u);

/// Working-list computation of the least simultaneous fixed point.
SolveResult solve(const GameGraph& g, const SolverConfig& cfg = {});

/// Reference implementation: sweep all vertices, applying any lift that
/// strictly increases, until none does. Oracle for solve().
ProgressMeasure solve_naive(const GameGraph& g);

/// Re-solves after `delta` was applied to g, reusing `prior` (the fixed point
/// of the pre-delta graph) as warm start. Touched entries are snapshot into
/// the delta so a rejection can restore prior exactly.
SolveResult solve_incremental(const GameGraph& g, const ProgressMeasure& prior, GraphDelta& delta,
                              const SolverConfig& cfg = {},
                              std::span<const VertexId> extra_seeds = {});

/// Undoes solver-state changes recorded in delta; call after GameGraph::undo.
void restore_solver_state(ProgressMeasure& pm, const GraphDelta& delta,
                          std::size_t vertex_slots_after_undo);

/// True iff no single lift can still increase pm (default global bounds).
bool is_fixed_point(const ProgressMeasure& pm, const GameGraph& g);

}  // namespace omega_reduce
