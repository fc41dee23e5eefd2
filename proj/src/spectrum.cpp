#include "dnkg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unsupported/Eigen/FFT>

#include "dnkg/error.hpp"

namespace dnkg {

SpectrumReport windowed_spectrum(const std::vector<Complex>& series, std::int64_t t0, int L,
                                 const SpectralParams& spectral) {
  if (L < kMinWindow) fail(ErrorCode::WindowTooShort, "window length " + std::to_string(L) + " < 256");
  if (t0 < 0 || t0 + L > std::int64_t(series.size()))
    fail(ErrorCode::DomainError, "window [" + std::to_string(t0) + ", " + std::to_string(t0 + L) +
                                     ") outside a series of length " + std::to_string(series.size()));

  std::vector<Complex> x(static_cast<std::size_t>(L)), X;
  double wsum = 0;
  for (int k = 0; k < L; ++k) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * k / L));  // periodic Hann
    wsum += w;
    x[std::size_t(k)] = w * series[std::size_t(t0 + k)];
  }
  // Eigen's inverse is (1/L) sum e^{+2 pi i k t / L}; undo the scaling.
  Eigen::FFT<double> fft;
  fft.inv(X, x);

  SpectrumReport rep;
  rep.t0 = t0;
  rep.L = L;
  rep.freqs.resize(std::size_t(L));
  rep.power.resize(std::size_t(L));
  std::vector<double> amp(static_cast<std::size_t>(L));
  // Bin k holds omega = 2 pi k / L; reorder so that frequencies ascend in (-pi, pi].
  for (int j = 0; j < L; ++j) {
    const int k = (j + L / 2 + 1) % L;
    double w = 2.0 * M_PI * k / L;
    if (w > M_PI) w -= 2.0 * M_PI;
    const Complex v = X[std::size_t(k)] * double(L);
    rep.freqs[std::size_t(j)] = w;
    rep.power[std::size_t(j)] = std::norm(v);
    amp[std::size_t(j)] = std::abs(v) / wsum;
  }

  const double bin = 2.0 * M_PI / L;
  const double half = spectral.omega_m + bin;
  double total = 0, inside = 0;
  for (int j = 0; j < L; ++j) {
    const double w = rep.freqs[std::size_t(j)], p = rep.power[std::size_t(j)];
    total += p;
    if (circle_distance(w, 0.0) < half || circle_distance(w, M_PI) < half) inside += p;
  }
  rep.gap_mass_fraction = total > 0 ? inside / total : 1.0;

  const double pmax = *std::max_element(rep.power.begin(), rep.power.end());
  if (pmax > 0) {
    for (int j = 0; j < L; ++j) {
      const double p = rep.power[std::size_t(j)];
      const double l = rep.power[std::size_t((j + L - 1) % L)], r = rep.power[std::size_t((j + 1) % L)];
      if (p >= l && p > r && p >= 1e-8 * pmax) rep.peaks.push_back({rep.freqs[std::size_t(j)], amp[std::size_t(j)]});
    }
    std::stable_sort(rep.peaks.begin(), rep.peaks.end(),
                     [](const Peak& a, const Peak& b) { return a.amplitude > b.amplitude; });
    if (rep.peaks.size() > 16) rep.peaks.resize(16);
  }
  return rep;
}

std::vector<std::int64_t> window_starts(std::int64_t begin, std::int64_t end, int L, int H) {
  if (H < 1) fail(ErrorCode::Config, "hop must be >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t t = begin; t + L <= end; t += H) out.push_back(t);
  return out;
}

}  // namespace dnkg
