#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dnkg/lattice.hpp"
#include "dnkg/potential.hpp"
#include "dnkg/solitary.hpp"

namespace dnkg {

// One: C e^{-iwt} at the origin. Two: e^{-iwt}(a + b (-1)^t), the peak pair w, w + pi.
enum class FitKind { Auto, One, Two };
const char* to_string(FitKind k);

struct FitOptions {
  int window = 1024;
  double s = 2.0;  // weighted-norm exponent
  FitKind kind = FitKind::Auto;
  // When set, the candidate's amplitude-equation defect is reported.
  std::optional<PolynomialPotential> W;
};

struct FitResult {
  bool zero = false;  // the zero wave was the nearest candidate
  SolitaryWave wave;  // valid unless zero
  FitKind kind = FitKind::One;
  double omega = 0.0;
  Complex a = 0.0, b = 0.0;  // origin amplitudes at w and w + pi (b = 0 for One)
  double fit_error = 0.0;    // relative least-squares residual over the window
  double distance = 0.0;     // weighted-norm distance from the state to the candidate
  std::optional<double> condition_defect;
};

// series[k] is psi_0 at time series_t0 + k; the window is the last opts.window
// values ending at state.t + 1. Throws NoPeak when the window spectrum is flat,
// RatioMismatch off the exact grid ratio.
FitResult fit_solitary(const FieldState& state, const std::vector<Complex>& series, std::int64_t series_t0,
                       const GridParams& grid, const FitOptions& opts = {});

}  // namespace dnkg
