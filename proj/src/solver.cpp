#include "omega_reduce/solver.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <ostream>
#include <queue>

#include "scc.hpp"

namespace omega_reduce {

namespace {

std::string show(Measure m) {
    return m == kInfiniteMeasure ? std::string("inf") : std::to_string(m);
}

/// One run of the working-list algorithm. In SCC mode the graph is processed
/// one strongly connected component at a time, sinks first, with per-component
/// saturation bounds; successors outside the current component read as 0 when
/// finite (Duplicator already wins there) and as infinity otherwise. With a
/// single component this degenerates to the plain global algorithm.
class LiftingRun {
public:
    LiftingRun(const GameGraph& g, const SolverConfig& cfg) : g_(g), cfg_(cfg) {
        const std::size_t slots = g.vertex_slots();
        pm_.n = g.n_priority1();
        pm_.mu.assign(slots, 0);
        pm_.best.assign(slots, 0);
        pm_.count.assign(slots, 0);
        for (VertexId v = 0; v < slots; ++v)
            if (g.alive(v)) pm_.count[v] = static_cast<std::uint32_t>(g.succ(v).size());
        stats_.list_entries.assign(slots, 0);
        in_list_.assign(slots, 0);
        seeded_.assign(slots, 0);
    }

    void adopt_prior(const ProgressMeasure& prior) {
        for (std::size_t v = 0; v < prior.mu.size() && v < pm_.mu.size(); ++v) {
            pm_.mu[v] = prior.mu[v];
            pm_.best[v] = prior.best[v];
            pm_.count[v] = prior.count[v];
        }
    }

    void set_snapshot_sink(GraphDelta* sink) {
        sink_ = sink;
        snapshotted_.assign(pm_.mu.size(), 0);
    }

    void mark_seed(VertexId v) {
        if (v < seeded_.size()) seeded_[v] = 1;
    }

    SolveResult run() {
        const std::size_t slots = g_.vertex_slots();
        if (cfg_.use_scc_bounds) {
            auto scc = detail::tarjan_scc(static_cast<std::uint32_t>(slots),
                                          [&](std::uint32_t u, auto cb) {
                                              if (!g_.alive(u)) return;
                                              for (VertexId w : g_.succ(u)) cb(w);
                                          });
            comp_ = std::move(scc.comp);
            bound_.assign(scc.count, 0);
            for (VertexId v = 0; v < slots; ++v)
                if (g_.alive(v) && g_.priority(v) == 1) ++bound_[comp_[v]];
        } else {
            comp_.assign(slots, 0);
            bound_.assign(1, pm_.n);
        }

        std::vector<std::vector<VertexId>> comp_members(bound_.size());
        for (VertexId v = 0; v < slots; ++v)
            if (g_.alive(v)) comp_members[comp_[v]].push_back(v);

        // Components come out of Tarjan sinks-first, so every cross-component
        // successor is already final when its consumer runs.
        for (cur_comp_ = 0; cur_comp_ < comp_members.size(); ++cur_comp_) {
            for (VertexId v : comp_members[cur_comp_]) {
                if (pm_.mu[v] == kInfiniteMeasure) continue;
                bool seed = seeded_[v] || g_.priority(v) == 1 || g_.succ(v).empty();
                if (!seed && cfg_.use_scc_bounds) {
                    for (VertexId w : g_.succ(v))
                        if (comp_[w] != cur_comp_) {
                            seed = true;
                            break;
                        }
                }
                if (seed) push(v);
            }
            if (!drain()) return finish(true);
        }
        return finish(false);
    }

private:
    Measure read(VertexId w) const {
        Measure m = pm_.mu[w];
        if (comp_[w] != cur_comp_) return m == kInfiniteMeasure ? kInfiniteMeasure : 0;
        return m;
    }

    void snapshot(VertexId v) {
        if (!sink_ || snapshotted_[v]) return;
        snapshotted_[v] = 1;
        sink_->saved_solver_entries.push_back({v, pm_.mu[v], pm_.best[v], pm_.count[v]});
    }

    void push(VertexId v) {
        if (in_list_[v]) return;
        in_list_[v] = 1;
        ++stats_.list_entries[v];
        if (cfg_.work_order == WorkOrder::fifo)
            fifo_.push_back(v);
        else
            heap_.push({pm_.mu[v], v});
    }

    VertexId pop() {
        if (cfg_.work_order == WorkOrder::fifo) {
            VertexId v = fifo_.front();
            fifo_.pop_front();
            in_list_[v] = 0;
            return v;
        }
        VertexId v = heap_.top().second;
        heap_.pop();
        in_list_[v] = 0;
        return v;
    }

    bool empty() const {
        return cfg_.work_order == WorkOrder::fifo ? fifo_.empty() : heap_.empty();
    }

    // Returns false on early abort.
    bool drain() {
        while (!empty()) {
            VertexId v = pop();
            ++stats_.pops;
            const Measure t = pm_.mu[v];
            snapshot(v);

            auto ss = g_.succ(v);
            Measure best;
            std::uint32_t cnt;
            if (ss.empty()) {
                best = kInfiniteMeasure;
                cnt = 0;
            } else if (g_.is_v0(v)) {
                best = kInfiniteMeasure;
                for (VertexId w : ss) best = std::min(best, read(w));
                cnt = 0;
                for (VertexId w : ss) cnt += read(w) == best;
            } else {
                best = 0;
                for (VertexId w : ss) best = std::max(best, read(w));
                cnt = 0;
                for (VertexId w : ss) cnt += read(w) == best;
            }
            pm_.best[v] = best;
            pm_.count[v] = cnt;
            Measure nm = incr(g_.priority(v), best, bound_[comp_[v]]);
            assert(nm >= t);
            pm_.mu[v] = nm;
            if (cfg_.trace)
                (*cfg_.trace) << g_.vertex_label(v) << ' ' << show(t) << ' ' << show(nm) << ' '
                              << show(best) << ' ' << cnt << '\n';
            if (nm == t) continue;

            if (nm == kInfiniteMeasure && cfg_.reference_measure &&
                v < cfg_.reference_measure->mu.size() &&
                cfg_.reference_measure->mu[v] != kInfiniteMeasure)
                return false;

            for (VertexId w : g_.pred(v)) {
                if (comp_[w] != cur_comp_) continue;  // handled when its component runs
                if (in_list_[w] || pm_.mu[w] == kInfiniteMeasure) continue;
                int pw = g_.priority(w);
                // A priority-0 vertex can only move through incr at infinity.
                bool gain = pw != 0 ? nm > pm_.best[w] : nm == kInfiniteMeasure;
                if (!gain) continue;
                if (!g_.is_v0(w)) {
                    push(w);
                } else if (t == pm_.best[w]) {
                    // v was among the best choices w counted on.
                    snapshot(w);
                    if (pm_.count[w] > 1)
                        --pm_.count[w];
                    else
                        push(w);
                }
            }
        }
        return true;
    }

    SolveResult finish(bool diverged) {
        for (std::uint32_t e : stats_.list_entries)
            stats_.max_list_entries = std::max(stats_.max_list_entries, e);
        return {std::move(pm_), diverged, std::move(stats_)};
    }

    const GameGraph& g_;
    const SolverConfig& cfg_;
    ProgressMeasure pm_;
    SolveStats stats_;
    GraphDelta* sink_ = nullptr;
    std::vector<std::uint8_t> in_list_, seeded_, snapshotted_;
    std::deque<VertexId> fifo_;
    struct HeapLess {
        bool operator()(const std::pair<Measure, VertexId>& a,
                        const std::pair<Measure, VertexId>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;
        }
    };
    std::priority_queue<std::pair<Measure, VertexId>, std::vector<std::pair<Measure, VertexId>>,
                        HeapLess>
        heap_;
    std::vector<std::uint32_t> comp_;
    std::vector<Measure> bound_;
    std::size_t cur_comp_ = 0;
};

}  // namespace

Measure best_nghb_ms(const ProgressMeasure& pm, const GameGraph& g, VertexId v) {
    auto ss = g.succ(v);
    if (ss.empty()) return kInfiniteMeasure;
    Measure best;
    if (g.is_v0(v)) {
        best = kInfiniteMeasure;
        for (VertexId w : ss) best = std::min(best, pm.mu[w]);
    } else {
        best = 0;
        for (VertexId w : ss) best = std::max(best, pm.mu[w]);
    }
    return best;
}

std::uint32_t nghb_cnt(const ProgressMeasure& pm, const GameGraph& g, VertexId v) {
    auto ss = g.succ(v);
    if (ss.empty()) return 0;
    Measure best = best_nghb_ms(pm, g, v);
    std::uint32_t cnt = 0;
    for (VertexId w : ss) cnt += pm.mu[w] == best;
    return cnt;
}

ProgressMeasure lift(const ProgressMeasure& pm, const GameGraph& g, VertexId u) {
    ProgressMeasure out = pm;
    out.mu[u] = incr(g.priority(u), best_nghb_ms(pm, g, u), pm.n);
    out.best[u] = best_nghb_ms(pm, g, u);
    out.count[u] = nghb_cnt(pm, g, u);
    return out;
}

SolveResult solve(const GameGraph& g, const SolverConfig& cfg) {
    LiftingRun run(g, cfg);
    return run.run();
}

ProgressMeasure solve_naive(const GameGraph& g) {
    const std::size_t slots = g.vertex_slots();
    ProgressMeasure pm;
    pm.n = g.n_priority1();
    pm.mu.assign(slots, 0);
    pm.best.assign(slots, 0);
    pm.count.assign(slots, 0);

    bool changed = true;
    while (changed) {
        changed = false;
        for (VertexId v = 0; v < slots; ++v) {
            if (!g.alive(v)) continue;
            Measure nm = incr(g.priority(v), best_nghb_ms(pm, g, v), pm.n);
            if (nm > pm.mu[v]) {
                pm.mu[v] = nm;
                changed = true;
            }
        }
    }
    for (VertexId v = 0; v < slots; ++v) {
        if (!g.alive(v)) continue;
        pm.best[v] = best_nghb_ms(pm, g, v);
        pm.count[v] = nghb_cnt(pm, g, v);
    }
    return pm;
}

SolveResult solve_incremental(const GameGraph& g, const ProgressMeasure& prior, GraphDelta& delta,
                              const SolverConfig& cfg, std::span<const VertexId> extra_seeds) {
    if (prior.mu.size() > g.vertex_slots())
        throw std::invalid_argument("prior measure does not match the graph");
    LiftingRun run(g, cfg);
    run.adopt_prior(prior);
    run.set_snapshot_sink(&delta);
    for (const auto& [from, to] : delta.added_edges) run.mark_seed(from);
    for (const auto& [from, to] : delta.removed_edges) run.mark_seed(from);
    for (VertexId v : delta.added_vertices) run.mark_seed(v);
    for (VertexId v : delta.purged_vertices) run.mark_seed(v);
    for (VertexId v : extra_seeds) run.mark_seed(v);
    return run.run();
}

void restore_solver_state(ProgressMeasure& pm, const GraphDelta& delta,
                          std::size_t vertex_slots_after_undo) {
    pm.mu.resize(vertex_slots_after_undo);
    pm.best.resize(vertex_slots_after_undo);
    pm.count.resize(vertex_slots_after_undo);
    for (auto it = delta.saved_solver_entries.rbegin(); it != delta.saved_solver_entries.rend();
         ++it) {
        if (it->v >= vertex_slots_after_undo) continue;
        pm.mu[it->v] = it->mu;
        pm.best[it->v] = it->best;
        pm.count[it->v] = it->count;
    }
}

bool is_fixed_point(const ProgressMeasure& pm, const GameGraph& g) {
    for (VertexId v = 0; v < g.vertex_slots(); ++v) {
        if (!g.alive(v)) continue;
        if (incr(g.priority(v), best_nghb_ms(pm, g, v), pm.n) != pm.mu[v]) return false;
    }
    return true;
}

}  // namespace omega_reduce
