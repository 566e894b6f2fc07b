#pragma once

#include <cstdint>
#include <limits>

namespace danforge {

using NodeId = std::uint32_t;

// Hop count; kUnreachable marks pairs in different components.
using Hops = std::uint32_t;
inline constexpr Hops kUnreachable = std::numeric_limits<Hops>::max();

inline constexpr double kProbTolerance = 1e-9;

}  // namespace danforge
