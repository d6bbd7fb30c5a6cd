#pragma once

#include <cstdint>
#include <vector>

namespace omega_reduce::detail {

struct SccResult {
    std::vector<std::uint32_t> comp;  // node -> component id
    std::uint32_t count = 0;          // component ids are 0..count-1, sinks first
    std::vector<std::uint8_t> cyclic; // component has an internal edge (size > 1 or self-loop)
};

/// Iterative Tarjan. `succ_of(u, cb)` must invoke cb(v) for every successor v
/// of u. Components are numbered in emission order, which is reverse
/// topological on the condensation: every edge leads from a higher to a lower
/// (or equal) component id.
template <class SuccFn>
SccResult tarjan_scc(std::uint32_t n, SuccFn&& succ_of) {
    constexpr std::uint32_t kUnset = 0xffffffffu;
    SccResult res;
    res.comp.assign(n, kUnset);

    std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0), self_loop(n, 0);
    std::vector<std::uint32_t> stack;
    stack.reserve(n);

    struct Frame {
        std::uint32_t node;
        std::uint32_t next_child;  // index into the expanded child list
    };
    std::vector<Frame> call;
    std::vector<std::vector<std::uint32_t>> children(1);
    std::uint32_t next_index = 0;

    std::vector<std::uint32_t> expanded;
    auto expand = [&](std::uint32_t u) {
        expanded.clear();
        succ_of(u, [&](std::uint32_t v) { expanded.push_back(v); });
        return expanded;
    };

    std::vector<std::vector<std::uint32_t>> succ_cache(n);
    std::vector<std::uint8_t> cached(n, 0);
    auto succs = [&](std::uint32_t u) -> const std::vector<std::uint32_t>& {
        if (!cached[u]) {
            succ_cache[u] = expand(u);
            cached[u] = 1;
        }
        return succ_cache[u];
    };

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!call.empty()) {
            Frame& f = call.back();
            const auto& ch = succs(f.node);
            if (f.next_child < ch.size()) {
                std::uint32_t v = ch[f.next_child++];
                if (v == f.node) self_loop[f.node] = 1;
                if (index[v] == kUnset) {
                    index[v] = low[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                    call.push_back({v, 0});
                } else if (on_stack[v]) {
                    if (index[v] < low[f.node]) low[f.node] = index[v];
                }
            } else {
                std::uint32_t u = f.node;
                call.pop_back();
                if (!call.empty()) {
                    std::uint32_t p = call.back().node;
                    if (low[u] < low[p]) low[p] = low[u];
                }
                if (low[u] == index[u]) {
                    std::uint32_t cid = res.count++;
                    std::uint32_t members = 0;
                    bool has_self = false;
                    while (true) {
                        std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        res.comp[w] = cid;
                        ++members;
                        if (self_loop[w]) has_self = true;
                        if (w == u) break;
                    }
                    res.cyclic.push_back(members > 1 || has_self);
                }
            }
        }
    }
    return res;
}

}  // namespace omega_reduce::detail
