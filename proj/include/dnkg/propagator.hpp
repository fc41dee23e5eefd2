#pragma once

#include <cstdint>

#include "dnkg/lattice.hpp"

namespace dnkg {

// Linear Klein-Gordon evolution (no W) on the box taken as periodic; returns the
// pair at time initial.t + t. Plane waves satisfy
// (1 + tau^2 m^2/2) cos w = 1 - (tau/eps)^2 sum_j (1 - cos xi_j).
FieldState linear_free_propagator(const FieldState& initial, std::int64_t t, const GridParams& grid);

}  // namespace dnkg
