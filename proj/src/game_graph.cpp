#include "omega_reduce/game_graph.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace omega_reduce {

namespace {

std::span<const Transition> range_of(const std::vector<Transition>& sorted, StateId src,
                                     SymbolId sym) {
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), Transition{src, sym, 0});
    auto hi = std::lower_bound(sorted.begin(), sorted.end(), Transition{src, sym + 1, 0});
    return {sorted.data() + (lo - sorted.begin()), sorted.data() + (hi - sorted.begin())};
}

void sorted_insert(std::vector<VertexId>& v, std::size_t lo, std::size_t hi, VertexId x) {
    auto it = std::lower_bound(v.begin() + lo, v.begin() + hi, x);
    v.insert(it, x);
}

bool sorted_erase(std::vector<VertexId>& v, std::size_t lo, std::size_t hi, VertexId x) {
    auto it = std::lower_bound(v.begin() + lo, v.begin() + hi, x);
    if (it == v.begin() + hi || *it != x) return false;
    v.erase(it);
    return true;
}

}  // namespace

GameGraph::Key GameGraph::v0_key(StateId q, StateId qd, SymbolId a, std::uint8_t bit) const {
    Key k = (static_cast<Key>(q) * duplicator_.state_count() + qd) * spoiler_.symbol_count() + a;
    return k * 2 + (bit == 1 ? 1 : 0);
}

VertexId GameGraph::v1_vertex(StateId q, StateId qd, int bit) const {
    if (q >= spoiler_.state_count() || qd >= duplicator_.state_count()) return kNoVertex;
    std::size_t idx = static_cast<std::size_t>(q) * duplicator_.state_count() + qd;
    if (flavor_ == GameFlavor::delayed) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("delayed vertex needs a bit");
        idx = idx * 2 + bit;
    }
    return v1_index_[idx];
}

VertexId GameGraph::v0_vertex(StateId q, StateId qd, SymbolId a, int bit) const {
    std::uint8_t b = kNoBit;
    if (flavor_ == GameFlavor::delayed) {
        if (bit != 0 && bit != 1) throw std::invalid_argument("delayed vertex needs a bit");
        b = static_cast<std::uint8_t>(bit);
    }
    auto it = v0_index_.find(v0_key(q, qd, a, b));
    return it == v0_index_.end() ? kNoVertex : it->second;
}

bool GameGraph::edge_shared_with_direct(VertexId from, VertexId to) const {
    if (flavor_ != GameFlavor::fair) return true;
    const VertexRec& f = verts_[from];
    if (!spoiler_.is_final(f.q)) return true;
    // Spoiler move out of (q, q'): dropped when q' is not final.
    // Duplicator response into (q, x): dropped when x is not final.
    StateId dup_state = f.is_v0 ? verts_[to].qd : f.qd;
    return duplicator_.is_final(dup_state);
}

void GameGraph::insert_edge(VertexId from, VertexId to, bool shared) {
    assert(from != to);
    auto& s = succ_[from];
    if (shared) {
        sorted_insert(s, 0, succ_direct_[from], to);
        ++succ_direct_[from];
    } else {
        sorted_insert(s, succ_direct_[from], s.size(), to);
    }
    auto& p = pred_[to];
    if (shared) {
        sorted_insert(p, 0, pred_direct_[to], from);
        ++pred_direct_[to];
    } else {
        sorted_insert(p, pred_direct_[to], p.size(), from);
    }
    ++edges_total_;
    if (shared) ++edges_direct_;
}

void GameGraph::erase_edge(VertexId from, VertexId to) {
    bool shared = edge_shared_with_direct(from, to);
    auto& s = succ_[from];
    bool ok;
    if (shared) {
        ok = sorted_erase(s, 0, succ_direct_[from], to);
        assert(ok);
        --succ_direct_[from];
    } else {
        ok = sorted_erase(s, succ_direct_[from], s.size(), to);
        assert(ok);
    }
    auto& p = pred_[to];
    if (shared) {
        ok = sorted_erase(p, 0, pred_direct_[to], from);
        --pred_direct_[to];
    } else {
        ok = sorted_erase(p, pred_direct_[to], p.size(), from);
    }
    assert(ok);
    (void)ok;
    --edges_total_;
    if (shared) --edges_direct_;
}

VertexId GameGraph::create_v0(StateId q, StateId qd, SymbolId a, std::uint8_t bit) {
    VertexId id = static_cast<VertexId>(verts_.size());
    std::uint8_t p = flavor_ == GameFlavor::direct ? 0 : 2;
    verts_.push_back({q, qd, a, bit, p, true, true});
    succ_.emplace_back();
    pred_.emplace_back();
    succ_direct_.push_back(0);
    pred_direct_.push_back(0);
    v0_index_.emplace(v0_key(q, qd, a, bit), id);
    v0_by_dup_sym_[static_cast<Key>(qd) * spoiler_.symbol_count() + a].push_back(id);
    return id;
}

GameGraph GameGraph::build(const BuchiAutomaton& spoiler, const BuchiAutomaton& duplicator,
                           GameFlavor flavor) {
    if (spoiler.symbols() != duplicator.symbols())
        throw std::invalid_argument("game graph needs a shared alphabet");
    if (spoiler.has_dead_end())
        throw std::invalid_argument("spoiler automaton has dead ends");

    GameGraph g;
    g.flavor_ = flavor;
    g.spoiler_ = spoiler;
    g.duplicator_ = duplicator;
    g.sp_trans_ = spoiler.transitions();
    g.dup_trans_ = duplicator.transitions();

    const std::size_t nq = spoiler.state_count();
    const std::size_t nd = duplicator.state_count();
    const bool delayed = flavor == GameFlavor::delayed;

    // Spoiler-turn vertices exist for every state pair (and obligation bit).
    g.v1_index_.assign(delayed ? nq * nd * 2 : nq * nd, kNoVertex);
    for (StateId q = 0; q < nq; ++q) {
        for (StateId qd = 0; qd < nd; ++qd) {
            if (delayed) {
                for (std::uint8_t b = 0; b <= 1; ++b) {
                    if (b == 1 && duplicator.is_final(qd)) continue;
                    g.v1_index_[(static_cast<std::size_t>(q) * nd + qd) * 2 + b] =
                        static_cast<VertexId>(g.verts_.size());
                    g.verts_.push_back({q, qd, kNoId, b, b, false, true});
                }
            } else {
                std::uint8_t p = 2;
                if (flavor == GameFlavor::direct) {
                    p = 0;
                } else if (duplicator.is_final(qd)) {
                    p = 0;
                } else if (spoiler.is_final(q)) {
                    p = 1;
                }
                g.v1_index_[static_cast<std::size_t>(q) * nd + qd] =
                    static_cast<VertexId>(g.verts_.size());
                g.verts_.push_back({q, qd, kNoId, kNoBit, p, false, true});
            }
        }
    }
    g.v1_total_ = g.verts_.size();
    g.succ_.resize(g.verts_.size());
    g.pred_.resize(g.verts_.size());
    g.succ_direct_.assign(g.verts_.size(), 0);
    g.pred_direct_.assign(g.verts_.size(), 0);

    // A response vertex (q, q', a) needs q to have an incoming a-transition.
    std::vector<std::vector<SymbolId>> in_syms(nq);
    for (const auto& t : g.sp_trans_) in_syms[t.dst].push_back(t.sym);
    for (auto& v : in_syms) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    for (StateId q = 0; q < nq; ++q) {
        for (SymbolId a : in_syms[q]) {
            for (StateId qd = 0; qd < nd; ++qd) {
                if (delayed) {
                    g.create_v0(q, qd, a, 0);
                    g.create_v0(q, qd, a, 1);
                } else {
                    g.create_v0(q, qd, a, kNoBit);
                }
            }
        }
    }

    auto spoiler_edge = [&](StateId q, StateId qd) {
        return !(spoiler.is_final(q) && !duplicator.is_final(qd));
    };

    // Spoiler moves: (q, q') -> (qt, q', a) for (q, a, qt).
    for (const auto& t : g.sp_trans_) {
        for (StateId qd = 0; qd < nd; ++qd) {
            if (delayed) {
                for (std::uint8_t b = 0; b <= 1; ++b) {
                    VertexId from = g.v1_index_[(static_cast<std::size_t>(t.src) * nd + qd) * 2 + b];
                    if (from == kNoVertex) continue;
                    std::uint8_t bt = spoiler.is_final(t.dst) ? 1 : b;
                    g.insert_edge(from, g.v0_vertex(t.dst, qd, t.sym, bt), true);
                }
            } else {
                bool shared = spoiler_edge(t.src, qd);
                if (flavor == GameFlavor::direct && !shared) continue;
                g.insert_edge(g.v1_vertex(t.src, qd), g.v0_vertex(t.dst, qd, t.sym),
                              flavor == GameFlavor::fair ? shared : true);
            }
        }
    }

    // Duplicator responses: (q, q', a) -> (q, x) for (q', a, x).
    for (VertexId v = static_cast<VertexId>(g.v1_total_); v < g.verts_.size(); ++v) {
        const VertexRec rec = g.verts_[v];
        for (const auto& t : range_of(g.dup_trans_, rec.qd, rec.sym)) {
            if (delayed) {
                std::uint8_t bt = duplicator.is_final(t.dst) ? 0 : rec.bit;
                g.insert_edge(v, g.v1_vertex(rec.q, t.dst, bt), true);
            } else {
                bool shared = !(spoiler.is_final(rec.q) && !duplicator.is_final(t.dst));
                if (flavor == GameFlavor::direct && !shared) continue;
                g.insert_edge(v, g.v1_vertex(rec.q, t.dst),
                              flavor == GameFlavor::fair ? shared : true);
            }
        }
    }

    for (const auto& rec : g.verts_)
        if (rec.priority == 1) ++g.n1_;
    return g;
}

GameGraph GameGraph::assemble(const BuchiAutomaton& spoiler, const BuchiAutomaton& duplicator,
                              GameFlavor flavor,
                              std::span<const VertexRec> vertices,
                              std::span<const std::pair<VertexId, VertexId>> edges) {
    GameGraph g;
    g.flavor_ = flavor;
    g.spoiler_ = spoiler;
    g.duplicator_ = duplicator;
    g.sp_trans_ = spoiler.transitions();
    g.dup_trans_ = duplicator.transitions();

    const std::size_t nq = spoiler.state_count();
    const std::size_t nd = duplicator.state_count();
    const bool delayed = flavor == GameFlavor::delayed;
    g.v1_index_.assign(delayed ? nq * nd * 2 : nq * nd, kNoVertex);
    for (const VertexRec& rec : vertices) {
        VertexId id = static_cast<VertexId>(g.verts_.size());
        g.verts_.push_back(rec);
        g.succ_.emplace_back();
        g.pred_.emplace_back();
        g.succ_direct_.push_back(0);
        g.pred_direct_.push_back(0);
        if (rec.is_v0) {
            g.v0_index_.emplace(g.v0_key(rec.q, rec.qd, rec.sym, rec.bit), id);
            g.v0_by_dup_sym_[static_cast<Key>(rec.qd) * spoiler.symbol_count() + rec.sym]
                .push_back(id);
        } else {
            std::size_t idx = static_cast<std::size_t>(rec.q) * nd + rec.qd;
            if (delayed) idx = idx * 2 + rec.bit;
            g.v1_index_[idx] = id;
            ++g.v1_total_;
        }
        if (rec.priority == 1) ++g.n1_;
    }
    for (const auto& [from, to] : edges) {
        if (from == to) throw std::invalid_argument("self-loop edge");
        if (g.verts_.at(from).is_v0 == g.verts_.at(to).is_v0)
            throw std::invalid_argument("edge must connect the two partitions");
        g.insert_edge(from, to, g.edge_shared_with_direct(from, to));
    }
    return g;
}

std::size_t GameGraph::vertex_count() const { return verts_.size() - purged_count_; }
std::size_t GameGraph::v1_count() const { return v1_total_; }
std::size_t GameGraph::v0_count() const { return vertex_count() - v1_total_; }

std::size_t GameGraph::edge_count() const { return direct_view_ ? edges_direct_ : edges_total_; }

void GameGraph::set_direct_view(bool on) {
    if (flavor_ != GameFlavor::fair)
        throw std::invalid_argument("direct view is only defined on fair graphs");
    direct_view_ = on;
}

GraphDelta GameGraph::add_spoiler_transitions(std::span<const Transition> T) {
    if (flavor_ != GameFlavor::fair)
        throw std::invalid_argument("add is defined for fair graphs only");
    GraphDelta d;
    for (const auto& t : T) {
        if (t.src >= spoiler_.state_count() || t.dst >= spoiler_.state_count() ||
            t.sym >= spoiler_.symbol_count())
            throw std::invalid_argument("transition outside the spoiler automaton");
        if (std::binary_search(sp_trans_.begin(), sp_trans_.end(), t))
            throw std::invalid_argument("added transition already present");

        sp_trans_.insert(std::lower_bound(sp_trans_.begin(), sp_trans_.end(), t), t);
        d.added_spoiler_transitions.push_back(t);

        const std::size_t nd = duplicator_.state_count();
        for (StateId qd = 0; qd < nd; ++qd) {
            VertexId v0 = v0_vertex(t.dst, qd, t.sym);
            if (v0 == kNoVertex) {
                v0 = create_v0(t.dst, qd, t.sym, kNoBit);
                d.added_vertices.push_back(v0);
                for (const auto& r : range_of(dup_trans_, qd, t.sym)) {
                    VertexId to = v1_vertex(t.dst, r.dst);
                    insert_edge(v0, to, edge_shared_with_direct(v0, to));
                    d.added_edges.push_back({v0, to});
                }
            }
            VertexId from = v1_vertex(t.src, qd);
            insert_edge(from, v0, edge_shared_with_direct(from, v0));
            d.added_edges.push_back({from, v0});
        }
    }
    return d;
}

GraphDelta GameGraph::remove_duplicator_transitions(std::span<const Transition> T) {
    if (flavor_ != GameFlavor::fair)
        throw std::invalid_argument("rem is defined for fair graphs only");
    GraphDelta d;
    for (const auto& t : T) {
        auto it = std::lower_bound(dup_trans_.begin(), dup_trans_.end(), t);
        if (it == dup_trans_.end() || *it != t)
            throw std::invalid_argument("removed transition not present in Duplicator automaton");
        dup_trans_.erase(it);
        d.removed_duplicator_transitions.push_back(t);

        auto by = v0_by_dup_sym_.find(static_cast<Key>(t.src) * spoiler_.symbol_count() + t.sym);
        if (by == v0_by_dup_sym_.end()) continue;
        for (VertexId v0 : by->second) {
            if (!verts_[v0].alive) continue;
            VertexId to = v1_vertex(verts_[v0].q, t.dst);
            erase_edge(v0, to);
            d.removed_edges.push_back({v0, to});
        }
    }
    return d;
}

GraphDelta GameGraph::purge_unreachable_v0() {
    GraphDelta d;
    for (VertexId v = 0; v < verts_.size(); ++v) {
        VertexRec& rec = verts_[v];
        if (!rec.alive || !rec.is_v0 || !pred_[v].empty()) continue;
        rec.alive = false;
        ++purged_count_;
        d.purged_vertices.push_back(v);
        std::vector<VertexId> outs(succ_[v].begin(), succ_[v].end());
        for (VertexId to : outs) {
            erase_edge(v, to);
            d.removed_edges.push_back({v, to});
        }
        v0_index_.erase(v0_key(rec.q, rec.qd, rec.sym, rec.bit));
        auto& lst = v0_by_dup_sym_[static_cast<Key>(rec.qd) * spoiler_.symbol_count() + rec.sym];
        lst.erase(std::remove(lst.begin(), lst.end(), v), lst.end());
    }
    return d;
}

void GameGraph::undo(const GraphDelta& d) {
    for (auto it = d.purged_vertices.rbegin(); it != d.purged_vertices.rend(); ++it) {
        VertexRec& rec = verts_[*it];
        rec.alive = true;
        --purged_count_;
        v0_index_.emplace(v0_key(rec.q, rec.qd, rec.sym, rec.bit), *it);
        v0_by_dup_sym_[static_cast<Key>(rec.qd) * spoiler_.symbol_count() + rec.sym].push_back(*it);
    }
    for (auto it = d.removed_edges.rbegin(); it != d.removed_edges.rend(); ++it)
        insert_edge(it->first, it->second, edge_shared_with_direct(it->first, it->second));
    for (auto it = d.added_edges.rbegin(); it != d.added_edges.rend(); ++it)
        erase_edge(it->first, it->second);
    for (auto it = d.added_vertices.rbegin(); it != d.added_vertices.rend(); ++it) {
        VertexId v = *it;
        assert(v + 1 == verts_.size() && succ_[v].empty() && pred_[v].empty());
        const VertexRec& rec = verts_[v];
        v0_index_.erase(v0_key(rec.q, rec.qd, rec.sym, rec.bit));
        auto& lst = v0_by_dup_sym_[static_cast<Key>(rec.qd) * spoiler_.symbol_count() + rec.sym];
        lst.erase(std::remove(lst.begin(), lst.end(), v), lst.end());
        verts_.pop_back();
        succ_.pop_back();
        pred_.pop_back();
        succ_direct_.pop_back();
        pred_direct_.pop_back();
    }
    for (auto it = d.added_spoiler_transitions.rbegin(); it != d.added_spoiler_transitions.rend();
         ++it) {
        auto pos = std::lower_bound(sp_trans_.begin(), sp_trans_.end(), *it);
        assert(pos != sp_trans_.end() && *pos == *it);
        sp_trans_.erase(pos);
    }
    for (auto it = d.removed_duplicator_transitions.rbegin();
         it != d.removed_duplicator_transitions.rend(); ++it) {
        dup_trans_.insert(std::lower_bound(dup_trans_.begin(), dup_trans_.end(), *it), *it);
    }
}

std::string GameGraph::vertex_label(VertexId v) const {
    const VertexRec& rec = verts_.at(v);
    std::string s = "(";
    if (rec.bit != kNoBit) {
        s += static_cast<char>('0' + rec.bit);
        s += ',';
    }
    s += spoiler_.state_name(rec.q);
    s += ',';
    s += duplicator_.state_name(rec.qd);
    if (rec.is_v0) {
        s += ',';
        s += spoiler_.symbol_name(rec.sym);
    }
    s += ')';
    return s;
}

std::string GameGraph::debug_dump() const {
    std::vector<std::pair<std::string, VertexId>> order;
    order.reserve(vertex_count());
    for (VertexId v = 0; v < verts_.size(); ++v)
        if (verts_[v].alive) order.emplace_back(vertex_label(v), v);
    std::sort(order.begin(), order.end());

    std::string out;
    for (const auto& [label, v] : order) {
        out += label;
        out += ' ';
        out += static_cast<char>('0' + priority(v));
        out += " ->";
        auto ss = succ(v);
        std::vector<std::string> succ_labels;
        succ_labels.reserve(ss.size());
        for (VertexId w : ss) succ_labels.push_back(vertex_label(w));
        std::sort(succ_labels.begin(), succ_labels.end());
        for (const auto& sl : succ_labels) {
            out += ' ';
            out += sl;
        }
        out += '\n';
    }
    return out;
}

}  // namespace omega_reduce
