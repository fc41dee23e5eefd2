#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dnkg/lattice.hpp"
#include "dnkg/potential.hpp"
#include "dnkg/stepper.hpp"

namespace dnkg {

// Waves are built for the oscillator model at tau/eps = 1/sqrt(n); the
// nonlinearity sits at the origin, so profiles are multiples of G(omega).
enum class SolitaryKind { One, Two, Four };
const char* to_string(SolitaryKind k);

struct SolitaryWave {
  SolitaryKind kind = SolitaryKind::One;
  std::vector<double> frequencies;  // {w}, {w}, {w1, w2}
  std::vector<Field> profiles;      // {phi}, {phi}, {p, r}
  std::vector<Complex> amplitudes;  // C in phi = C G(w), one per profile
  int sigma = 1;                    // Two only
  BoxDomain box;
  std::vector<double> lambda_roots;  // One: all admissible |phi_0|^2
  double condition_residual = 0.0;   // max |1 + tau^2 W' G_0 cos w| over the modes

  Field evaluate(std::int64_t t) const;
  // (psi^t0, psi^{t0+1}).
  FieldState initial_state(std::int64_t t0 = 0) const;
  // Profiles of the modes e^{-i w_k t} in spectral form; for Four the order is
  // p (w1), q (w1 + pi), r (w2), s (w2 + pi).
  std::vector<std::pair<double, Field>> spectral_components() const;
};

struct FourFreqParams {
  double M = 0, N = 0;
  double alpha = 0, beta = 0;
  Complex p0, r0;
};

bool one_freq_criterion(double omega, const GridParams& grid, const PolynomialPotential& W);
RealInterval one_freq_range_1d(const GridParams& grid);

struct RootSelect {
  enum class Mode { Smallest, Largest, Index } mode = Mode::Smallest;
  int index = 0;
  static RootSelect smallest() { return {}; }
  static RootSelect largest() { return {Mode::Largest, 0}; }
  static RootSelect at(int k) { return {Mode::Index, k}; }
};

SolitaryWave construct_one_freq(double omega, const BoxDomain& box, const GridParams& grid,
                                const PolynomialPotential& W, RootSelect select = {},
                                Complex phase = 1.0);

// amplitude is phi_0. verify: omega is checked against the amplitude equation.
// solve: omega is only a sign hint; the frequency in [0, w_m) is found.
enum class TwoFreqMode { Verify, Solve };
SolitaryWave construct_two_freq(double omega, int sigma, const BoxDomain& box, const GridParams& grid,
                                const PolynomialPotential& W, Complex amplitude,
                                TwoFreqMode mode = TwoFreqMode::Verify);

struct FourFreqResult {
  SolitaryWave wave;
  PolynomialPotential W;
  FourFreqParams params;
};
FourFreqResult construct_four_freq(double omega1, double omega2, Complex p0, Complex r0,
                                   const BoxDomain& box, const GridParams& grid);

// Max over interior sites and t = t0+1 .. t0+steps of the scheme defect.
double residual(const SolitaryWave& wave, std::int64_t steps, const GridParams& grid,
                const PolynomialPotential& W, ModelKind model);

}  // namespace dnkg
