#include "omega_reduce/generator.hpp"

#include <array>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>

namespace omega_reduce {

namespace {

// Bounded draw that does not depend on std::uniform_int_distribution, so
// generated corpora are byte-identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    while (true) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

std::string state_label(std::uint32_t i) { return "q" + std::to_string(i); }

std::string symbol_label(std::uint32_t i, std::uint32_t alphabet_size) {
    if (alphabet_size <= 26) return std::string(1, static_cast<char>('a' + i));
    return "s" + std::to_string(i);
}

}  // namespace

BuchiAutomaton random_automaton(const GeneratorConfig& cfg) {
    if (cfg.n_states == 0) throw std::invalid_argument("n_states must be positive");
    if (cfg.alphabet_size == 0) throw std::invalid_argument("alphabet_size must be positive");
    if (cfg.n_final > cfg.n_states) throw std::invalid_argument("n_final exceeds n_states");
    if (!(cfg.totality >= 0.0 && cfg.totality <= 1.0))
        throw std::invalid_argument("totality must lie in [0,1]");

    std::mt19937_64 rng(cfg.seed);
    const std::uint32_t n = cfg.n_states;
    const std::uint32_t k = cfg.alphabet_size;

    std::set<std::pair<std::uint32_t, std::uint32_t>> covered;  // (state, symbol)
    std::set<std::array<std::uint32_t, 3>> transitions;         // (src, sym, dst)

    // Spanning tree rooted at state 0 keeps every state reachable.
    for (std::uint32_t i = 1; i < n; ++i) {
        std::uint32_t parent = static_cast<std::uint32_t>(bounded(rng, i));
        std::uint32_t sym = static_cast<std::uint32_t>(bounded(rng, k));
        if (transitions.insert({parent, sym, i}).second) covered.insert({parent, sym});
    }

    const std::uint64_t target = static_cast<std::uint64_t>(
        std::ceil(cfg.totality * static_cast<double>(n) * static_cast<double>(k)));
    std::uint64_t misses = 0;
    while (covered.size() < target) {
        std::uint32_t src = static_cast<std::uint32_t>(bounded(rng, n));
        std::uint32_t sym = static_cast<std::uint32_t>(bounded(rng, k));
        std::uint32_t dst = static_cast<std::uint32_t>(bounded(rng, n));
        if (transitions.insert({src, sym, dst}).second) {
            covered.insert({src, sym});
            misses = 0;
        } else if (++misses > 1000ull * n * k) {
            // Degenerate configs (tiny n*k) can stall on duplicate draws; fill
            // the first uncovered pair deterministically.
            for (std::uint32_t s = 0; s < n && covered.size() < target; ++s)
                for (std::uint32_t a = 0; a < k && covered.size() < target; ++a)
                    if (!covered.count({s, a})) {
                        std::uint32_t dst2 = static_cast<std::uint32_t>(bounded(rng, n));
                        transitions.insert({s, a, dst2});
                        covered.insert({s, a});
                    }
        }
    }

    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t j = i + static_cast<std::uint32_t>(bounded(rng, n - i));
        std::swap(order[i], order[j]);
    }

    BuchiAutomaton::Builder b;
    for (std::uint32_t a = 0; a < k; ++a) b.add_symbol(symbol_label(a, k));
    for (std::uint32_t q = 0; q < n; ++q) b.add_state(state_label(q));
    b.mark_initial(state_label(0));
    for (std::uint32_t i = 0; i < cfg.n_final; ++i) b.mark_final(state_label(order[i]));
    for (const auto& [src, sym, dst] : transitions)
        b.add_transition(state_label(src), symbol_label(sym, k), state_label(dst));
    return b.build();
}

}  // namespace omega_reduce
