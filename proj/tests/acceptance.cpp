// Acceptance suite: one self-contained check per shipping criterion, each
// printing a single pass/fail line with its runtime.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "omega_reduce/generator.hpp"
#include "omega_reduce/minimize.hpp"
#include "omega_reduce/solver.hpp"
#include "oracles.hpp"

using namespace omega_reduce;
namespace fs = std::filesystem;

namespace {

constexpr Measure kInf = kInfiniteMeasure;

struct Outcome {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

BuchiAutomaton random_live(std::mt19937_64& rng, std::uint32_t max_states,
                           std::uint32_t alphabet) {
    while (true) {
        BuchiAutomaton a = remove_dead_ends(oracles::random_small(rng, max_states, alphabet));
        if (a.state_count() > 0) return a;
    }
}

// --- criterion 1: two-state fixture graph, measure and relation -------------

void criterion1(Outcome& out) {
    BuchiAutomaton a = fixtures::two_state_loop();
    GameGraph g = GameGraph::build(a, a, GameFlavor::fair);
    const StateId q0 = a.state_id("q0"), q1 = a.state_id("q1");

    out.expect(g.v1_count() == 4, "|V1| != 4");
    out.expect(g.v0_vertex(q1, q0, a.symbol_id("a")) == kNoVertex, "(q1,q0,a) exists");
    out.expect(g.priority(g.v1_vertex(q0, q1)) == 1, "priority of (q0,q1) != 1");

    SolveResult res = solve(g);
    VertexId v01 = g.v1_vertex(q0, q1);
    out.expect(res.measure.mu[v01] == 1, "mu((q0,q1)) != 1");
    for (VertexId v = 0; v < g.vertex_slots(); ++v)
        if (v != v01) out.expect(res.measure.mu[v] == 0, "nonzero measure off (q0,q1)");

    SimulationRelation rel = extract_relation(res.measure, g);
    out.expect(rel.contains(q0, q1), "(q0,q1) missing from relation");
    out.expect(rel.contains(q1, q0), "(q1,q0) missing from relation");
}

// --- criterion 2: merge closure is exact, the re-solve diverges everywhere --

void criterion2(Outcome& out) {
    BuchiAutomaton a = fixtures::two_state_loop();
    auto T = merge_closure_transitions(a, a.state_id("q0"), a.state_id("q1"));
    auto expect_T = fixtures::two_state_loop_closure(a);
    std::sort(expect_T.begin(), expect_T.end());
    out.expect(T == expect_T, "closure set differs");

    GameGraph g = GameGraph::build(a, a, GameFlavor::fair);
    GraphDelta d = g.add_spoiler_transitions(T);
    SolveResult res = solve(g);
    for (VertexId v = 0; v < g.vertex_slots(); ++v)
        if (g.alive(v)) out.expect(res.measure.mu[v] == kInf, "a vertex stayed finite");
    g.undo(d);

    MinimizeConfig cfg;
    cfg.method = MinimizeMethod::fair;
    cfg.opt.reuse = cfg.opt.history = cfg.opt.fast_detect = true;
    FairMinimizer engine(a, cfg);
    out.expect(engine.try_merge("q0", "q1") == FairMinimizer::Decision::rejected,
               "merge was not rejected");
    out.expect(engine.automaton() == a, "rejection modified the automaton");
}

// --- criterion 3: redundant transition removal ------------------------------

void criterion3(Outcome& out) {
    BuchiAutomaton a = fixtures::square_redundant();
    const StateId q0 = a.state_id("q0"), q1 = a.state_id("q1"), q2 = a.state_id("q2"),
                  q3 = a.state_id("q3");
    const SymbolId sa = a.symbol_id("a");

    GameGraph g = GameGraph::build(a, a, GameFlavor::fair);
    ProgressMeasure base = solve(g).measure;
    auto cands = candidate_removals(a, extract_relation(base, g));
    out.expect(cands.size() == 1, "expected exactly one removal candidate");
    out.expect(!cands.empty() && cands[0] == Transition{q0, sa, q1}, "wrong candidate");

    Transition t{q0, sa, q1};
    GraphDelta d = g.remove_duplicator_transitions({&t, 1});
    std::set<std::pair<VertexId, VertexId>> expect_edges = {
        {g.v0_vertex(q1, q0, sa), g.v1_vertex(q1, q1)},
        {g.v0_vertex(q2, q0, sa), g.v1_vertex(q2, q1)},
        {g.v0_vertex(q3, q0, sa), g.v1_vertex(q3, q1)},
    };
    std::set<std::pair<VertexId, VertexId>> got(d.removed_edges.begin(), d.removed_edges.end());
    out.expect(got == expect_edges, "removed edge set differs");

    ProgressMeasure after = solve(g).measure;
    for (VertexId v = 0; v < base.mu.size(); ++v)
        out.expect((base.mu[v] == kInf) == (after.mu[v] == kInf), "winning set changed");
    g.undo(d);

    MinimizeConfig cfg;
    cfg.method = MinimizeMethod::fair;
    cfg.opt.reuse = cfg.opt.history = cfg.opt.fast_detect = true;
    FairMinimizer engine(a, cfg);
    out.expect(engine.try_remove("q0", "a", "q1") == FairMinimizer::Decision::accepted,
               "removal was not accepted");

    MinimizeResult res = minimize(a, cfg);
    out.expect(!res.automaton.has_transition(
                   {res.automaton.state_id("q0"), res.automaton.symbol_id("a"),
                    res.automaton.find_state("q1") ? res.automaton.state_id("q1") : 0}),
               "output still has the transition");
}

// --- criterion 4: the diverging two-state graph -----------------------------

void criterion4(Outcome& out) {
    BuchiAutomaton a = fixtures::b_omega_pair();
    GameGraph g = GameGraph::build(a, a, GameFlavor::fair);
    const StateId q0 = a.state_id("q0"), q1 = a.state_id("q1");

    SolveResult res = solve(g);
    out.expect(res.measure.mu[g.v1_vertex(q0, q1)] == kInf, "mu((q0,q1)) finite");
    out.expect(res.measure.mu[g.v0_vertex(q0, q1, a.symbol_id("b"))] == kInf,
               "mu((q0,q1,b)) finite");
    out.expect(res.measure.mu[g.v1_vertex(q1, q0)] == 0, "mu((q1,q0)) != 0");

    SimulationRelation rel = extract_relation(res.measure, g);
    out.expect(rel.contains(q1, q0), "(q1,q0) missing");
    out.expect(!rel.contains(q0, q1), "(q0,q1) wrongly present");

    // The narrated pop sequence is order-sensitive; assert the final measures
    // plus the working-list bounds instead.
    for (std::uint32_t e : res.stats.list_entries)
        out.expect(e <= res.measure.n + 1, "a vertex entered the list more than n+1 times");
    out.expect(res.stats.pops <= 6, "more pops than the narrated run");
}

// --- criterion 5: oracle equivalence over random arenas ---------------------

void criterion5(Outcome& out) {
    std::mt19937_64 rng(501);
    int graphs = 0;
    while (graphs < 1000) {
        BuchiAutomaton a = random_live(rng, 6, 1 + rng() % 2);
        for (GameFlavor flavor : {GameFlavor::fair, GameFlavor::direct, GameFlavor::delayed}) {
            GameGraph g = GameGraph::build(a, a, flavor);
            ProgressMeasure naive = solve_naive(g);
            SolveResult fast = solve(g);
            out.expect(fast.measure.mu == naive.mu, "solve != solve_naive");

            SolverConfig scc;
            scc.use_scc_bounds = true;
            ProgressMeasure sccd = solve(g, scc).measure;
            for (VertexId v = 0; v < g.vertex_slots(); ++v)
                out.expect((sccd.mu[v] == kInf) == (naive.mu[v] == kInf),
                           "scc winning set differs");
            ++graphs;
            if (!out.ok) return;
        }
    }
    out.detail = std::to_string(graphs) + " graphs";
}

// --- criterion 6: language preservation across the config matrix ------------

std::vector<MinimizeConfig> config_matrix() {
    auto mk = [](MinimizeMethod m, ApplicationMode mode, Preprocess pre, MinimizeOptions opt) {
        MinimizeConfig c;
        c.method = m;
        c.mode = mode;
        c.preprocess = pre;
        c.opt = opt;
        return c;
    };
    MinimizeOptions none;
    MinimizeOptions fast;
    fast.reuse = fast.history = fast.fast_detect = true;
    MinimizeOptions full = fast;
    full.equiv_classes = full.smart_init = full.purge_unreachable = true;
    MinimizeOptions batch_fast;
    batch_fast.reuse = batch_fast.fast_detect = true;
    MinimizeOptions batch_scc = batch_fast;
    batch_scc.scc = true;
    MinimizeOptions scc_only;
    scc_only.scc = true;
    return {
        mk(MinimizeMethod::fair, ApplicationMode::sequential, Preprocess::dead_ends, none),
        mk(MinimizeMethod::fair, ApplicationMode::sequential, Preprocess::dead_ends, fast),
        mk(MinimizeMethod::fair, ApplicationMode::sequential, Preprocess::nonlive, full),
        mk(MinimizeMethod::fair, ApplicationMode::batch, Preprocess::dead_ends, batch_fast),
        mk(MinimizeMethod::fair_direct, ApplicationMode::sequential, Preprocess::nonlive, fast),
        mk(MinimizeMethod::fair_direct, ApplicationMode::batch, Preprocess::dead_ends, batch_scc),
        mk(MinimizeMethod::direct, ApplicationMode::sequential, Preprocess::nonlive, scc_only),
        mk(MinimizeMethod::delayed, ApplicationMode::sequential, Preprocess::dead_ends, none),
    };
}

void criterion6(Outcome& out) {
    const auto sweep = oracles::enumerate_lassos(2, 6, 6);
    const auto configs = config_matrix();
    std::mt19937_64 rng(601);

    for (int i = 0; i < 500 && out.ok; ++i) {
        GeneratorConfig gc;
        gc.n_states = 2 + static_cast<std::uint32_t>(rng() % 7);
        gc.alphabet_size = 2;
        gc.n_final = 1 + static_cast<std::uint32_t>(rng() % gc.n_states);
        gc.totality = 0.3 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
        gc.seed = rng();
        BuchiAutomaton a = random_automaton(gc);

        std::vector<bool> reference(sweep.words.size());
        for (std::size_t w = 0; w < sweep.words.size(); ++w)
            reference[w] = accepts_lasso(a, sweep.words[w].first, sweep.words[w].second);

        std::map<std::string, bool> verdict_cache;
        for (const auto& cfg : configs) {
            MinimizeResult res = minimize(a, cfg);
            std::string key = serialize_ba(res.automaton);
            auto it = verdict_cache.find(key);
            bool same;
            if (it != verdict_cache.end()) {
                same = it->second;
            } else {
                same = true;
                for (std::size_t w = 0; w < sweep.words.size() && same; ++w)
                    same = accepts_lasso(res.automaton, sweep.words[w].first,
                                         sweep.words[w].second) == reference[w];
                verdict_cache.emplace(std::move(key), same);
            }
            out.expect(same, "language changed (instance " + std::to_string(i) + ")");
            if (!out.ok) return;
        }
    }
    out.detail = "500 automata x 8 configs";
}

// --- criterion 7: incremental resolve monotone and exact --------------------

void criterion7(Outcome& out) {
    std::mt19937_64 rng(701);
    for (int i = 0; i < 200 && out.ok; ++i) {
        BuchiAutomaton a = random_live(rng, 6, 2);
        GameGraph g = GameGraph::build(a, a, GameFlavor::fair);
        ProgressMeasure prior = solve(g).measure;

        GraphDelta delta;
        if (rng() % 2 == 0) {
            std::vector<Transition> T;
            for (StateId q = 0; q < a.state_count(); ++q)
                for (SymbolId s = 0; s < a.symbol_count(); ++s)
                    for (StateId d = 0; d < a.state_count(); ++d)
                        if (!a.has_transition({q, s, d}) && rng() % 6 == 0) T.push_back({q, s, d});
            delta = g.add_spoiler_transitions(T);
        } else {
            std::vector<Transition> R;
            for (const auto& t : a.transitions())
                if (rng() % 3 == 0) R.push_back(t);
            delta = g.remove_duplicator_transitions(R);
        }

        SolveResult inc = solve_incremental(g, prior, delta);
        SolveResult scratch = solve(g);
        out.expect(inc.measure.mu == scratch.measure.mu, "incremental != scratch");
        for (VertexId v = 0; v < prior.mu.size(); ++v)
            out.expect(inc.measure.mu[v] >= prior.mu[v], "measure shrank");
    }
    if (out.ok) out.detail = "200 deltas";
}

// --- criterion 8: structural bounds on generated corpora --------------------

void criterion8(Outcome& out) {
    std::vector<GeneratorConfig> corpora = {
        {100, 5, 10, 0.05, 8001}, {100, 5, 10, 0.5, 8002}, {60, 26, 12, 0.1, 8003},
        {8, 2, 2, 0.9, 8004},     {1, 1, 1, 1.0, 8005},
    };
    for (const auto& gc : corpora) {
        for (std::uint64_t k = 0; k < 6; ++k) {
            GeneratorConfig c = gc;
            c.seed += k;
            BuchiAutomaton a = remove_dead_ends(random_automaton(c));
            if (a.state_count() == 0) continue;
            GameGraph g = GameGraph::build(a, a, GameFlavor::fair);
            const std::size_t nq = a.state_count(), nd = a.transition_count();
            out.expect(g.v1_count() == nq * nq, "|V1| != |Q|^2");
            out.expect(g.v0_count() <= nq * nd, "|V0| > |Q||Delta|");
            out.expect(g.edge_count() <= 2 * nq * nd, "|E| > 2|Q||Delta|");

            SolveResult res = solve(g);
            out.expect(g.n_priority1() + 1 == res.measure.n + 1, "bound mismatch");
            MinimizeConfig cfg;
            cfg.method = MinimizeMethod::fair;
            out.expect(minimize(a, cfg).stats.infinity_bound == res.measure.n + 1,
                       "stats infinity != n+1");
            for (std::uint32_t e : res.stats.list_entries)
                out.expect(e <= res.measure.n + 1, "worklist entries exceed n+1");
            if (!out.ok) return;
        }
    }
    out.detail = "5 corpora x 6 instances";
}

// --- criterion 9: relation inclusions and fair transitivity -----------------

void criterion9(Outcome& out) {
    std::mt19937_64 rng(901);
    for (int i = 0; i < 200 && out.ok; ++i) {
        BuchiAutomaton a = random_live(rng, 8, 2);
        auto rel_of = [&](GameFlavor flavor) {
            GameGraph g = GameGraph::build(a, a, flavor);
            return extract_relation(solve(g).measure, g);
        };
        SimulationRelation di = rel_of(GameFlavor::direct);
        SimulationRelation de = rel_of(GameFlavor::delayed);
        SimulationRelation f = rel_of(GameFlavor::fair);
        const std::size_t n = a.state_count();
        for (StateId q = 0; q < n; ++q)
            for (StateId r = 0; r < n; ++r) {
                if (di.contains(q, r)) out.expect(de.contains(q, r), "direct not in delayed");
                if (de.contains(q, r)) out.expect(f.contains(q, r), "delayed not in fair");
            }
        for (StateId q = 0; q < n; ++q)
            for (StateId r = 0; r < n; ++r) {
                if (!f.contains(q, r)) continue;
                for (StateId s = 0; s < n; ++s)
                    if (f.contains(r, s)) out.expect(f.contains(q, s), "fair not transitive");
            }
    }
    if (out.ok) out.detail = "200 automata";
}

// --- criterion 10: bench emits the exact column set -------------------------

void criterion10(Outcome& out) {
#ifdef OMEGA_REDUCE_CLI
    fs::path dir = fs::temp_directory_path() / "omega_reduce_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string cli = OMEGA_REDUCE_CLI;
    auto run = [&](const std::string& args) {
        return std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    };
    out.expect(run("generate --states 10 --alphabet 2 --final 2 --totality 0.6 --seed 77 "
                   "--count 4 -d " +
                   (dir / "corpus").string()) == 0,
               "generate failed");
    fs::path csv = dir / "stats.csv";
    out.expect(run("bench -d " + (dir / "corpus").string() +
                   " --methods fair,fair-direct,direct,delayed -o " + csv.string()) == 0,
               "bench failed");

    std::ifstream in(csv);
    std::string header;
    out.expect(static_cast<bool>(std::getline(in, header)), "empty csv");
    out.expect(header == "file,method,time_s,Q,Delta,V,E,infinity,states_removed,"
                         "transitions_removed",
               "header differs: " + header);

    // Rows reparse; mean rows equal the column means (excluding empty cells).
    struct Row {
        std::vector<std::string> cells;
    };
    std::vector<Row> data, means;
    std::string line;
    while (std::getline(in, line)) {
        Row r;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) r.cells.push_back(cell);
        if (line.back() == ',') r.cells.push_back("");
        (line.rfind("mean,", 0) == 0 ? means : data).push_back(r);
    }
    out.expect(data.size() == 16, "expected 4 files x 4 methods rows");
    out.expect(means.size() == 4, "expected one mean row per method");
    for (const auto& m : means) {
        out.expect(m.cells.size() == 10, "mean row column count");
        const std::string& method = m.cells[1];
        for (std::size_t col : {3u, 8u}) {  // Q and states_removed are integer means
            double sum = 0;
            int n = 0;
            for (const auto& r : data)
                if (r.cells[1] == method) {
                    sum += std::stod(r.cells[col]);
                    ++n;
                }
            double mean_val = std::stod(m.cells[col]);
            out.expect(std::abs(mean_val - sum / n) < 1e-3, "mean column mismatch");
        }
        if (method == "direct" || method == "delayed")
            out.expect(m.cells[9].empty(), "t mean should be empty for " + method);
    }
#else
    out.expect(false, "CLI path not configured");
#endif
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "two-state fixture: arena shape, measure, relation", 1.0, criterion1},
        {2, "merge closure drives every vertex to infinity and is rejected", 1.0, criterion2},
        {3, "redundant transition candidate, exact edge removal, accepted", 1.0, criterion3},
        {4, "diverging pair: final measures and worklist bounds", 1.0, criterion4},
        {5, "solver equals naive oracle on 1000 random arenas", 60.0, criterion5},
        {6, "language preserved across 500 automata x 8 configs", 300.0, criterion6},
        {7, "incremental resolve: pointwise equal and monotone", 30.0, criterion7},
        {8, "structural bounds on generated corpora", 60.0, criterion8},
        {9, "relation inclusions and fair transitivity", 60.0, criterion9},
        {10, "bench CSV column set and mean rows", 60.0, criterion10},
    };

    int failures = 0;
    for (auto& c : criteria) {
        Outcome out;
        auto t0 = std::chrono::steady_clock::now();
        c.run(out);
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = elapsed < c.budget_seconds;
        bool pass = out.ok && in_budget;
        std::printf("criterion %2d: %s  [%s] (%.2fs%s)%s%s\n", c.id, pass ? "PASS" : "FAIL",
                    c.title, elapsed, in_budget ? "" : " OVER BUDGET",
                    out.detail.empty() ? "" : " -- ", out.detail.c_str());
        if (!pass) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
