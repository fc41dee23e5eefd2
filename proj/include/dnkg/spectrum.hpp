#pragma once

#include <cstdint>
#include <vector>

#include "dnkg/lattice.hpp"
#include "dnkg/spectral.hpp"

namespace dnkg {

inline constexpr int kMinWindow = 256;

struct Peak {
  double omega = 0.0;
  double amplitude = 0.0;  // tone amplitude estimate at the bin
};

struct SpectrumReport {
  std::int64_t t0 = 0;
  int L = 0;
  std::vector<double> freqs;  // 2 pi k / L mapped to (-pi, pi], ascending
  std::vector<double> power;
  double gap_mass_fraction = 1.0;
  std::vector<Peak> peaks;    // local maxima, strongest first
};

// Hann-tapered transform sum_t e^{+i w t} psi^t over series[t0, t0 + L).
// Gaps are widened by one bin on each side before the mass is counted.
SpectrumReport windowed_spectrum(const std::vector<Complex>& series, std::int64_t t0, int L,
                                 const SpectralParams& spectral);

// Start indices t0, t0 + H, ... of full windows inside [begin, end).
std::vector<std::int64_t> window_starts(std::int64_t begin, std::int64_t end, int L, int H);

}  // namespace dnkg
