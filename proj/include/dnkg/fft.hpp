#pragma once

#include <vector>

#include "dnkg/lattice.hpp"

namespace dnkg {

// In-place n-d DFT over a row-major cube of side `side`.
// forward: sum_x u_x e^{-2 pi i k x / side}; inverse includes the 1/side^n factor.
void fft_nd(Field& data, int n, int side, bool inverse);

}  // namespace dnkg
