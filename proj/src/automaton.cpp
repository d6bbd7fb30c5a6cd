#include "omega_reduce/automaton.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <sstream>

#include "scc.hpp"

namespace omega_reduce {

namespace {

StateId lookup(const std::vector<std::string>& names, std::string_view name) {
    auto it = std::lower_bound(names.begin(), names.end(), name);
    if (it == names.end() || *it != name) return kNoId;
    return static_cast<StateId>(it - names.begin());
}

}  // namespace

bool valid_identifier(std::string_view s) {
    if (s.empty() || s.front() == '#') return false;
    if (s.find("->") != std::string_view::npos) return false;
    for (unsigned char c : s) {
        if (c == ',' || std::isspace(c)) return false;
    }
    return true;
}

std::optional<StateId> BuchiAutomaton::find_state(std::string_view name) const {
    StateId q = lookup(state_names_, name);
    if (q == kNoId) return std::nullopt;
    return q;
}

std::optional<SymbolId> BuchiAutomaton::find_symbol(std::string_view name) const {
    SymbolId a = lookup(symbol_names_, name);
    if (a == kNoId) return std::nullopt;
    return a;
}

StateId BuchiAutomaton::state_id(std::string_view name) const {
    auto q = find_state(name);
    if (!q) throw std::invalid_argument("unknown state: " + std::string(name));
    return *q;
}

SymbolId BuchiAutomaton::symbol_id(std::string_view name) const {
    auto a = find_symbol(name);
    if (!a) throw std::invalid_argument("unknown symbol: " + std::string(name));
    return *a;
}

std::vector<StateId> BuchiAutomaton::initial_states() const {
    std::vector<StateId> out;
    for (StateId q = 0; q < initial_.size(); ++q)
        if (initial_[q]) out.push_back(q);
    return out;
}

std::vector<StateId> BuchiAutomaton::final_states() const {
    std::vector<StateId> out;
    for (StateId q = 0; q < final_.size(); ++q)
        if (final_[q]) out.push_back(q);
    return out;
}

std::span<const Transition> BuchiAutomaton::out(StateId q) const {
    return {transitions_.data() + out_begin_.at(q), transitions_.data() + out_begin_.at(q + 1)};
}

std::span<const Transition> BuchiAutomaton::out(StateId q, SymbolId a) const {
    auto all = out(q);
    auto lo = std::lower_bound(all.begin(), all.end(), Transition{q, a, 0});
    auto hi = std::lower_bound(all.begin(), all.end(), Transition{q, a + 1, 0});
    return {lo, hi};
}

bool BuchiAutomaton::has_transition(const Transition& t) const {
    return std::binary_search(transitions_.begin(), transitions_.end(), t);
}

bool BuchiAutomaton::has_dead_end() const {
    for (StateId q = 0; q < state_count(); ++q)
        if (out(q).empty()) return true;
    return false;
}

BuchiAutomaton::Builder& BuchiAutomaton::Builder::add_state(std::string_view name) {
    states_.emplace_back(name);
    return *this;
}

BuchiAutomaton::Builder& BuchiAutomaton::Builder::add_symbol(std::string_view name) {
    symbols_.emplace_back(name);
    return *this;
}

BuchiAutomaton::Builder& BuchiAutomaton::Builder::add_transition(std::string_view src,
                                                                 std::string_view sym,
                                                                 std::string_view dst) {
    transitions_.push_back({std::string(src), std::string(sym), std::string(dst)});
    return *this;
}

BuchiAutomaton::Builder& BuchiAutomaton::Builder::mark_initial(std::string_view name) {
    initial_.emplace_back(name);
    return *this;
}

BuchiAutomaton::Builder& BuchiAutomaton::Builder::mark_final(std::string_view name) {
    final_.emplace_back(name);
    return *this;
}

BuchiAutomaton BuchiAutomaton::Builder::build() const {
    auto check = [](const std::string& id) {
        if (!valid_identifier(id)) throw std::invalid_argument("invalid identifier: '" + id + "'");
    };

    std::vector<std::string> states = states_;
    std::vector<std::string> symbols = symbols_;
    for (const auto& s : initial_) states.push_back(s);
    for (const auto& s : final_) states.push_back(s);
    for (const auto& [src, sym, dst] : transitions_) {
        states.push_back(src);
        states.push_back(dst);
        symbols.push_back(sym);
    }
    for (const auto& s : states) check(s);
    for (const auto& s : symbols) check(s);

    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());

    BuchiAutomaton a;
    a.state_names_ = std::move(states);
    a.symbol_names_ = std::move(symbols);
    a.initial_.assign(a.state_names_.size(), false);
    a.final_.assign(a.state_names_.size(), false);
    for (const auto& s : initial_) a.initial_[lookup(a.state_names_, s)] = true;
    for (const auto& s : final_) a.final_[lookup(a.state_names_, s)] = true;

    a.transitions_.reserve(transitions_.size());
    for (const auto& [src, sym, dst] : transitions_) {
        a.transitions_.push_back({lookup(a.state_names_, src), lookup(a.symbol_names_, sym),
                                  lookup(a.state_names_, dst)});
    }
    std::sort(a.transitions_.begin(), a.transitions_.end());
    a.transitions_.erase(std::unique(a.transitions_.begin(), a.transitions_.end()),
                         a.transitions_.end());

    a.out_begin_.assign(a.state_names_.size() + 1, 0);
    for (const auto& t : a.transitions_) a.out_begin_[t.src + 1]++;
    for (std::size_t i = 1; i < a.out_begin_.size(); ++i) a.out_begin_[i] += a.out_begin_[i - 1];
    return a;
}

// --- BA interchange format ---------------------------------------------------

BuchiAutomaton parse_ba(std::string_view text) {
    BuchiAutomaton::Builder b;
    int section = 1;  // 1 initial states, 2 transitions, 3 final states
    bool saw_transition = false;
    std::vector<std::string> leading_ids;  // section-1 lines, resolved at the end

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        if (line.find("->") != std::string_view::npos) {
            if (section == 3) throw ParseError(line_no, "transition after final-state section");
            section = 2;
            std::size_t comma = line.find(',');
            if (comma == std::string_view::npos)
                throw ParseError(line_no, "transition line without ','");
            std::string_view sym = line.substr(0, comma);
            std::string_view rest = line.substr(comma + 1);
            std::size_t arrow = rest.find("->");
            if (arrow == std::string_view::npos)
                throw ParseError(line_no, "malformed transition '" + std::string(line) + "'");
            std::string_view src = rest.substr(0, arrow);
            std::string_view dst = rest.substr(arrow + 2);
            if (!valid_identifier(sym) || !valid_identifier(src) || !valid_identifier(dst))
                throw ParseError(line_no, "malformed transition '" + std::string(line) + "'");
            saw_transition = true;
            b.add_transition(src, sym, dst);
        } else {
            if (!valid_identifier(line))
                throw ParseError(line_no, "malformed identifier '" + std::string(line) + "'");
            if (section == 1) {
                leading_ids.emplace_back(line);
            } else {
                section = 3;
                b.mark_final(line);
            }
        }
    }

    if (saw_transition) {
        for (const auto& s : leading_ids) b.mark_initial(s);
    } else {
        // Without a transition line the section boundary is not marked; read
        // the first identifier as initial and the rest as final.
        for (std::size_t i = 0; i < leading_ids.size(); ++i) {
            if (i == 0)
                b.mark_initial(leading_ids[i]);
            else
                b.mark_final(leading_ids[i]);
        }
    }
    return b.build();
}

std::string serialize_ba(const BuchiAutomaton& a) {
    std::string out;
    for (StateId q : a.initial_states()) {
        out += a.state_name(q);
        out += '\n';
    }
    std::vector<std::array<const std::string*, 3>> lines;  // {sym, src, dst}
    lines.reserve(a.transition_count());
    for (const auto& t : a.transitions())
        lines.push_back({&a.symbol_name(t.sym), &a.state_name(t.src), &a.state_name(t.dst)});
    std::sort(lines.begin(), lines.end(), [](const auto& x, const auto& y) {
        if (*x[0] != *y[0]) return *x[0] < *y[0];
        if (*x[1] != *y[1]) return *x[1] < *y[1];
        return *x[2] < *y[2];
    });
    for (const auto& l : lines) {
        out += *l[0];
        out += ',';
        out += *l[1];
        out += "->";
        out += *l[2];
        out += '\n';
    }
    for (StateId q : a.final_states()) {
        out += a.state_name(q);
        out += '\n';
    }
    return out;
}

// --- preprocessing -----------------------------------------------------------

namespace {

BuchiAutomaton rebuild_with(const BuchiAutomaton& a, const std::vector<bool>& keep) {
    BuchiAutomaton::Builder b;
    for (const auto& s : a.symbols()) b.add_symbol(s);
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (!keep[q]) continue;
        b.add_state(a.state_name(q));
        if (a.is_initial(q)) b.mark_initial(a.state_name(q));
        if (a.is_final(q)) b.mark_final(a.state_name(q));
    }
    for (const auto& t : a.transitions()) {
        if (keep[t.src] && keep[t.dst])
            b.add_transition(a.state_name(t.src), a.symbol_name(t.sym), a.state_name(t.dst));
    }
    return b.build();
}

}  // namespace

BuchiAutomaton remove_dead_ends(const BuchiAutomaton& a) {
    const std::size_t n = a.state_count();
    std::vector<std::uint32_t> outdeg(n, 0);
    std::vector<std::vector<StateId>> preds(n);
    for (const auto& t : a.transitions()) {
        outdeg[t.src]++;
        preds[t.dst].push_back(t.src);
    }
    std::vector<bool> dead(n, false);
    std::deque<StateId> work;
    for (StateId q = 0; q < n; ++q)
        if (outdeg[q] == 0) {
            dead[q] = true;
            work.push_back(q);
        }
    while (!work.empty()) {
        StateId q = work.front();
        work.pop_front();
        for (StateId p : preds[q]) {
            if (dead[p]) continue;
            if (--outdeg[p] == 0) {
                dead[p] = true;
                work.push_back(p);
            }
        }
    }
    bool any = false;
    std::vector<bool> keep(n);
    for (StateId q = 0; q < n; ++q) {
        keep[q] = !dead[q];
        any |= dead[q];
    }
    if (!any) return a;
    return rebuild_with(a, keep);
}

BuchiAutomaton remove_nonlive_states(const BuchiAutomaton& a) {
    const std::size_t n = a.state_count();
    if (n == 0) return a;

    std::vector<bool> fwd(n, false);
    std::deque<StateId> work;
    for (StateId q : a.initial_states()) {
        fwd[q] = true;
        work.push_back(q);
    }
    while (!work.empty()) {
        StateId q = work.front();
        work.pop_front();
        for (const auto& t : a.out(q))
            if (!fwd[t.dst]) {
                fwd[t.dst] = true;
                work.push_back(t.dst);
            }
    }

    auto scc = detail::tarjan_scc(static_cast<std::uint32_t>(n), [&](std::uint32_t u, auto cb) {
        for (const auto& t : a.out(u)) cb(t.dst);
    });

    // Backward reachability from final states that lie on a cycle.
    std::vector<std::vector<StateId>> preds(n);
    for (const auto& t : a.transitions()) preds[t.dst].push_back(t.src);
    std::vector<bool> bwd(n, false);
    for (StateId q = 0; q < n; ++q) {
        if (a.is_final(q) && scc.cyclic[scc.comp[q]]) {
            bwd[q] = true;
            work.push_back(q);
        }
    }
    while (!work.empty()) {
        StateId q = work.front();
        work.pop_front();
        for (StateId p : preds[q])
            if (!bwd[p]) {
                bwd[p] = true;
                work.push_back(p);
            }
    }

    std::vector<bool> keep(n);
    bool all = true;
    for (StateId q = 0; q < n; ++q) {
        keep[q] = fwd[q] && bwd[q];
        all &= keep[q];
    }
    if (all) return a;
    return rebuild_with(a, keep);
}

// --- lasso membership --------------------------------------------------------

bool accepts_lasso(const BuchiAutomaton& a, std::span<const SymbolId> stem,
                   std::span<const SymbolId> loop) {
    if (loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");
    for (SymbolId s : stem)
        if (s >= a.symbol_count()) throw std::invalid_argument("stem symbol outside alphabet");
    for (SymbolId s : loop)
        if (s >= a.symbol_count()) throw std::invalid_argument("loop symbol outside alphabet");

    const std::uint32_t n = static_cast<std::uint32_t>(a.state_count());
    if (n == 0) return false;

    // Subset run over the stem.
    std::vector<bool> cur(n, false);
    bool nonempty = false;
    for (StateId q : a.initial_states()) {
        cur[q] = true;
        nonempty = true;
    }
    for (SymbolId s : stem) {
        if (!nonempty) return false;
        std::vector<bool> next(n, false);
        nonempty = false;
        for (StateId q = 0; q < n; ++q) {
            if (!cur[q]) continue;
            for (const auto& t : a.out(q, s)) {
                next[t.dst] = true;
                nonempty = true;
            }
        }
        cur = std::move(next);
    }
    if (!nonempty) return false;

    // Product with loop positions: node (q, i) steps via loop[i] to (q', i+1 mod L).
    const std::uint32_t L = static_cast<std::uint32_t>(loop.size());
    const std::uint32_t pn = n * L;
    auto succ_of = [&](std::uint32_t node, auto cb) {
        StateId q = node / L;
        std::uint32_t i = node % L;
        std::uint32_t ni = (i + 1) % L;
        for (const auto& t : a.out(q, loop[i])) cb(t.dst * L + ni);
    };

    std::vector<bool> reach(pn, false);
    std::deque<std::uint32_t> work;
    for (StateId q = 0; q < n; ++q) {
        if (cur[q]) {
            reach[q * L] = true;
            work.push_back(q * L);
        }
    }
    while (!work.empty()) {
        std::uint32_t u = work.front();
        work.pop_front();
        succ_of(u, [&](std::uint32_t v) {
            if (!reach[v]) {
                reach[v] = true;
                work.push_back(v);
            }
        });
    }

    auto scc = detail::tarjan_scc(pn, succ_of);
    for (std::uint32_t node = 0; node < pn; ++node) {
        if (reach[node] && a.is_final(node / L) && scc.cyclic[scc.comp[node]]) return true;
    }
    return false;
}

bool accepts_lasso(const BuchiAutomaton& a, const LassoWord& w) {
    std::vector<SymbolId> stem, loop;
    stem.reserve(w.stem.size());
    loop.reserve(w.loop.size());
    for (const auto& s : w.stem) stem.push_back(a.symbol_id(s));
    for (const auto& s : w.loop) loop.push_back(a.symbol_id(s));
    return accepts_lasso(a, stem, loop);
}

}  // namespace omega_reduce
