#pragma once

#include <cstdint>

namespace cubix {

/// Process-wide size guards. Enumerative operations refuse inputs that
/// would exceed them instead of running away.
struct Limits {
    int max_cube_dim = 6;
    std::uint64_t max_candidates = 1'000'000;
};

Limits& limits();

} // namespace cubix
