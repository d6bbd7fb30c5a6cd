#pragma once

#include <cstdint>

#include "omega_reduce/automaton.hpp"

namespace omega_reduce {

struct GeneratorConfig {
    std::uint32_t n_states = 1;
    std::uint32_t alphabet_size = 1;
    std::uint32_t n_final = 1;
    double totality = 0.0;  // fraction of (state, symbol) pairs with an outgoing transition
    std::uint64_t seed = 0;
};

/// Seed-deterministic connected random automaton: one initial state q0, a
/// random spanning tree rooted there, then uniform transitions until the
/// totality target of covered (state, symbol) pairs is met, then n_final
/// final states drawn uniformly.
BuchiAutomaton random_automaton(const GeneratorConfig& cfg);

}  // namespace omega_reduce
