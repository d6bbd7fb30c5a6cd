#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "omega_reduce/automaton.hpp"
#include "omega_reduce/measure.hpp"

namespace omega_reduce {

enum class GameFlavor { direct, delayed, fair };

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = 0xffffffffu;
inline constexpr std::uint8_t kNoBit = 0xff;

/// Structural identity of an arena vertex. Spoiler-turn vertices (q, q')
/// carry sym == kNoId; Duplicator-response vertices (q, q', a) carry the
/// pending symbol. Delayed graphs add the obligation bit.
struct VertexRec {
    StateId q;          // Spoiler's state
    StateId qd;         // Duplicator's state
    SymbolId sym;       // kNoId for Spoiler-turn vertices
    std::uint8_t bit;   // kNoBit outside delayed flavor
    std::uint8_t priority;
    bool is_v0;         // Duplicator-response vertex
    bool alive;
};

struct SolverSnapshot {
    VertexId v;
    Measure mu;
    Measure best;
    std::uint32_t count;
};

/// Reversible record of one graph modification (plus lazily captured solver
/// state). Deltas must be undone in LIFO order.
struct GraphDelta {
    std::vector<std::pair<VertexId, VertexId>> added_edges;
    std::vector<std::pair<VertexId, VertexId>> removed_edges;
    std::vector<VertexId> added_vertices;
    std::vector<VertexId> purged_vertices;
    std::vector<Transition> added_spoiler_transitions;
    std::vector<Transition> removed_duplicator_transitions;
    std::vector<SolverSnapshot> saved_solver_entries;

    bool empty() const {
        return added_edges.empty() && removed_edges.empty() && added_vertices.empty() &&
               purged_vertices.empty();
    }
};

/// Parity game arena over one or two Buchi automata.
///
/// Fair-flavor graphs keep the edges a direct-simulation game would drop in a
/// separate adjacency segment, so the direct game is available as a constant
/// time view switch. Transition-level modifications return deltas that undo
/// exactly (LIFO).
class GameGraph {
public:
    static GameGraph build(const BuchiAutomaton& spoiler, const BuchiAutomaton& duplicator,
                           GameFlavor flavor);

    /// Assembles an arena from explicit vertices and edges (indices into
    /// `vertices`). The automata only supply state/symbol names. Bipartiteness
    /// and the no-self-loop rule are enforced.
    static GameGraph assemble(const BuchiAutomaton& spoiler, const BuchiAutomaton& duplicator,
                              GameFlavor flavor, std::span<const VertexRec> vertices,
                              std::span<const std::pair<VertexId, VertexId>> edges);

    GameFlavor flavor() const { return flavor_; }
    const BuchiAutomaton& spoiler() const { return spoiler_; }
    const BuchiAutomaton& duplicator() const { return duplicator_; }

    /// Transition sets as modified by add/rem (the automata above stay as built).
    const std::vector<Transition>& current_spoiler_transitions() const { return sp_trans_; }
    const std::vector<Transition>& current_duplicator_transitions() const { return dup_trans_; }

    std::size_t vertex_slots() const { return verts_.size(); }  // includes purged slots
    std::size_t vertex_count() const;                           // alive only
    std::size_t v0_count() const;
    std::size_t v1_count() const;
    std::size_t edge_count() const;  // under the active view

    const VertexRec& vertex(VertexId v) const { return verts_.at(v); }
    bool alive(VertexId v) const { return verts_[v].alive; }
    bool is_v0(VertexId v) const { return verts_[v].is_v0; }
    int priority(VertexId v) const { return direct_view_ ? 0 : verts_[v].priority; }
    std::uint32_t n_priority1() const { return direct_view_ ? 0 : n1_; }

    std::span<const VertexId> succ(VertexId v) const {
        return {succ_[v].data(), direct_view_ ? succ_direct_[v] : succ_[v].size()};
    }
    std::span<const VertexId> pred(VertexId v) const {
        return {pred_[v].data(), direct_view_ ? pred_direct_[v] : pred_[v].size()};
    }

    VertexId v1_vertex(StateId q, StateId qd, int bit = -1) const;
    VertexId v0_vertex(StateId q, StateId qd, SymbolId a, int bit = -1) const;

    /// Fair-built graphs only: expose the direct-simulation subgame.
    void set_direct_view(bool on);
    bool direct_view() const { return direct_view_; }

    /// Adds transitions to Spoiler's side, creating Duplicator-response
    /// vertices (with their response edges) as needed. Fair flavor only;
    /// T must be disjoint from the current Spoiler transitions.
    GraphDelta add_spoiler_transitions(std::span<const Transition> T);

    /// Removes each transition in T from Duplicator's side, deleting exactly
    /// the response edges that used it. Fair flavor only; T must be a subset
    /// of the current Duplicator transitions.
    GraphDelta remove_duplicator_transitions(std::span<const Transition> T);

    /// Tombstones Duplicator-response vertices with no predecessors.
    /// Spoiler-turn vertices always stay.
    GraphDelta purge_unreachable_v0();

    /// Reverts a delta (graph part only; solver snapshots are a solver concern).
    void undo(const GraphDelta& delta);

    std::string vertex_label(VertexId v) const;

    /// Deterministic adjacency listing, one alive vertex per line:
    /// `label priority -> succ…` with lines and successors in lexicographic
    /// label order. Two graphs are value-equal iff their dumps match.
    std::string debug_dump() const;

private:
    using Key = std::uint64_t;
    Key v0_key(StateId q, StateId qd, SymbolId a, std::uint8_t bit) const;

    void insert_edge(VertexId from, VertexId to, bool shared_with_direct);
    void erase_edge(VertexId from, VertexId to);
    bool edge_shared_with_direct(VertexId from, VertexId to) const;
    VertexId create_v0(StateId q, StateId qd, SymbolId a, std::uint8_t bit);

    GameFlavor flavor_ = GameFlavor::fair;
    bool direct_view_ = false;
    BuchiAutomaton spoiler_, duplicator_;
    std::vector<Transition> sp_trans_, dup_trans_;  // sorted, current

    std::vector<VertexRec> verts_;
    std::vector<std::vector<VertexId>> succ_, pred_;
    // Length of the adjacency prefix shared with the direct subgame.
    std::vector<std::uint32_t> succ_direct_, pred_direct_;
    std::size_t edges_total_ = 0, edges_direct_ = 0;
    std::uint32_t n1_ = 0;
    std::size_t v1_total_ = 0;
    std::size_t purged_count_ = 0;

    std::vector<VertexId> v1_index_;                 // dense (q, qd[, bit]) -> id
    std::unordered_map<Key, VertexId> v0_index_;
    std::unordered_map<Key, std::vector<VertexId>> v0_by_dup_sym_;  // (qd, a) -> vertices
};

}  // namespace omega_reduce
