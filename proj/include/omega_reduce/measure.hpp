#pragma once

#include <cstdint>
#include <stdexcept>

namespace omega_reduce {

using Measure = std::uint32_t;
inline constexpr Measure kInfiniteMeasure = 0xffffffffu;

/// Measure bump by vertex priority: counts priority-1 visits up to the bound
/// n, resets at priority 0, saturates at infinity.
inline Measure incr(int priority, Measure x, Measure n) {
    if (x == kInfiniteMeasure) return kInfiniteMeasure;
    switch (priority) {
        case 0: return 0;
        case 1: return x < n ? x + 1 : kInfiniteMeasure;
        case 2: return x;
        default: throw std::invalid_argument("priority outside {0,1,2}");
    }
}

}  // namespace omega_reduce
