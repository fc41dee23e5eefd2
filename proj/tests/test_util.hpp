#pragma once

#include <random>

#include "dnkg/lattice.hpp"

namespace dnkg::testing {

// Random complex data supported on |X|_inf <= support, zero elsewhere.
inline FieldState random_state(const BoxDomain& box, int support, double amp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, amp);
  FieldState s = FieldState::zeros(box);
  for (Index i = 0; i < box.size(); ++i) {
    if (box.linf(i) > support) continue;
    s.prev[i] = Complex(g(rng), g(rng));
    s.curr[i] = Complex(g(rng), g(rng));
  }
  return s;
}

inline double max_abs_diff(const Field& a, const Field& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace dnkg::testing
