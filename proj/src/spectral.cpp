#include "dnkg/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "dnkg/error.hpp"
#include "dnkg/fft.hpp"

namespace dnkg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kMaxNodes = 1L << 20;
// FFT tables are cheaper per node; 4096^2 complex values is about 270 MB.
constexpr long kMaxTableNodes = 1L << 24;

long pow_int(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

bool at_gap_edge(double omega, const GridParams& grid) {
  return std::abs(std::abs(std::cos(omega)) - 1.0 / grid.mass_factor()) <= 1e-14;
}

void check_gap_frequency(Complex omega, const GridParams& grid, bool& allow_singular) {
  allow_singular = false;
  if (omega.imag() != 0.0) {
    if (omega.imag() < 0) fail(ErrorCode::DomainError, "imaginary part of omega must be positive");
    return;
  }
  if (!in_continuous_spectrum(omega.real(), grid)) return;
  if (grid.n >= 5 && at_gap_edge(omega.real(), grid)) {
    allow_singular = true;
    return;
  }
  fail(ErrorCode::OnSpectrum, "omega lies in the continuous spectrum");
}

}  // namespace

SpectralParams SpectralParams::from(const GridParams& grid) {
  grid.validate();
  SpectralParams s;
  s.omega_m = grid.omega_m();
  s.gap0 = {-s.omega_m, s.omega_m};
  s.gap_pi = {kPi - s.omega_m, kPi + s.omega_m};
  s.edges = {-s.omega_m, s.omega_m, kPi - s.omega_m, kPi + s.omega_m};
  const double A = grid.mass_factor();
  for (int l = 0; l <= grid.n; ++l) {
    const double a = std::acos((1.0 - 2.0 * l / grid.n) / A);
    s.sigma_set.push_back(a);
    s.sigma_set.push_back(-a);
  }
  std::sort(s.sigma_set.begin(), s.sigma_set.end());
  return s;
}

bool SpectralParams::in_gap(double omega) const {
  return circle_distance(omega, 0.0) < omega_m || circle_distance(omega, kPi) < omega_m;
}

bool SpectralParams::in_gap0(double omega) const { return circle_distance(omega, 0.0) < omega_m; }

double circle_distance(double omega, double target) {
  return std::abs(std::remainder(omega - target, 2.0 * kPi));
}

double symbol(const Eigen::VectorXd& xi, double omega, const GridParams& grid) {
  const double tm2 = grid.tau * grid.tau * grid.m * grid.m;
  return (2.0 + tm2) * std::cos(omega) - (2.0 / grid.n) * xi.array().cos().sum();
}

Complex symbol(const Eigen::VectorXd& xi, Complex omega, const GridParams& grid) {
  const double tm2 = grid.tau * grid.tau * grid.m * grid.m;
  return (2.0 + tm2) * std::cos(omega) - (2.0 / grid.n) * xi.array().cos().sum();
}

bool in_continuous_spectrum(double omega, const GridParams& grid) {
  // A few ulps of slack so that the computed edge w_m counts as inside.
  return std::abs(std::cos(omega)) <= (1.0 / grid.mass_factor()) * (1.0 + 4e-16);
}

double dispersion_omega(const Eigen::VectorXd& xi, const GridParams& grid) {
  const double c = xi.array().cos().sum() / grid.n / grid.mass_factor();
  return std::acos(std::clamp(c, -1.0, 1.0));
}

GreensValue greens(const Site& X, Complex omega, const GridParams& grid, int quad_points) {
  grid.validate();
  const int n = grid.n;
  if (X.size() != n) fail(ErrorCode::DimensionError, "site dimension differs from grid");
  bool allow_singular = false;
  check_gap_frequency(omega, grid, allow_singular);
  const Complex c0 = (2.0 + grid.tau * grid.tau * grid.m * grid.m) * std::cos(omega);

  int N = std::max(4, quad_points);
  Complex prev_val;
  bool have_prev = false;
  GreensValue out;
  while (true) {
    const long total = pow_int(N, n);
    if (total > kMaxNodes) fail(ErrorCode::NoConvergence, "Green's function quadrature hit the node cap");
    std::vector<double> cs(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) cs[std::size_t(k)] = std::cos(2.0 * kPi * k / N);
    Complex sum = 0;
    bool skipped = false;
    std::vector<int> idx(std::size_t(n), 0);
    for (long node = 0; node < total; ++node) {
      double cos_sum = 0, phase = 0;
      for (int j = 0; j < n; ++j) {
        cos_sum += cs[std::size_t(idx[std::size_t(j)])];
        phase += 2.0 * kPi * double(idx[std::size_t(j)]) * X[j] / N;
      }
      const Complex a = c0 - (2.0 / n) * cos_sum;
      if (std::abs(a) < 1e-12) {
        if (!allow_singular) fail(ErrorCode::OnSpectrum, "symbol vanishes at a quadrature node");
        skipped = true;
      } else {
        sum += std::polar(1.0, phase) / a;
      }
      for (int j = n - 1; j >= 0; --j) {
        if (++idx[std::size_t(j)] < N) break;
        idx[std::size_t(j)] = 0;
      }
    }
    const Complex val = sum / double(total);
    out.value = val;
    out.points_per_dim = N;
    out.degraded = skipped;
    if (have_prev) {
      out.est_error = std::abs(val - prev_val);
      if (out.est_error <= 1e-10 * std::abs(val) || (skipped && pow_int(2 * N, n) > kMaxNodes)) break;
    }
    prev_val = val;
    have_prev = true;
    N *= 2;
  }
  if (omega.imag() == 0.0 && std::abs(out.value.imag()) > 1e-10 * std::max(1.0, std::abs(out.value)))
    fail(ErrorCode::NoConvergence, "gap Green's function has a non-negligible imaginary part");
  return out;
}

GreensTable periodic_greens_table(const BoxDomain& box, double omega, const GridParams& grid, int N) {
  grid.validate();
  if (box.dim() != grid.n) fail(ErrorCode::DimensionError, "box dimension differs from grid");
  if (N < 2 * box.radius() + 2) fail(ErrorCode::DomainError, "period too short for the box");
  bool allow_singular = false;
  check_gap_frequency(Complex(omega, 0.0), grid, allow_singular);
  const int n = grid.n;
  const double c0 = (2.0 + grid.tau * grid.tau * grid.m * grid.m) * std::cos(omega);
  const long total = pow_int(N, n);
  if (total > kMaxTableNodes) fail(ErrorCode::NoConvergence, "Green's table quadrature hit the node cap");
  std::vector<double> cs(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) cs[std::size_t(k)] = std::cos(2.0 * kPi * k / N);
  Field buf(total);
  for (long node = 0; node < total; ++node) {
    long rem = node;
    double cos_sum = 0;
    for (int j = 0; j < n; ++j) {
      cos_sum += cs[std::size_t(rem % N)];
      rem /= N;
    }
    const double a = c0 - (2.0 / n) * cos_sum;
    buf[node] = std::abs(a) < 1e-12 ? 0.0 : 1.0 / a;
  }
  fft_nd(buf, n, N, true);
  GreensTable tab;
  tab.omega = omega;
  tab.box = box;
  tab.points_per_dim = N;
  tab.values.resize(box.size());
  double max_imag = 0;
  for (Index i = 0; i < box.size(); ++i) {
    long flat = 0;
    for (int j = 0; j < n; ++j) flat = flat * N + ((box.coord(i, j) % N) + N) % N;
    max_imag = std::max(max_imag, std::abs(buf[flat].imag()));
    tab.values[i] = buf[flat].real();
  }
  const double scale = tab.values.cwiseAbs().maxCoeff();
  if (max_imag > 1e-10 * std::max(scale, 1.0))
    fail(ErrorCode::NoConvergence, "gap Green's table has a non-negligible imaginary part");
  return tab;
}

GreensTable greens_table(const BoxDomain& box, double omega, const GridParams& grid, int quad_points) {
  int N = int(std::bit_ceil(unsigned(std::max({2 * box.radius() + 2, quad_points, 16}))));
  GreensTable tab = periodic_greens_table(box, omega, grid, N);
  while (true) {
    N *= 2;
    GreensTable next = periodic_greens_table(box, omega, grid, N);
    const double scale = next.values.cwiseAbs().maxCoeff();
    next.est_error = (next.values - tab.values).cwiseAbs().maxCoeff() / scale;
    tab = std::move(next);
    if (tab.est_error <= 1e-10) break;
  }
  return tab;
}

const GreensTable& GreensCache::get(const BoxDomain& box, double omega, const GridParams& grid) {
  const Key key{std::bit_cast<std::uint64_t>(omega), std::bit_cast<std::uint64_t>(grid.eps),
                std::bit_cast<std::uint64_t>(grid.tau), std::bit_cast<std::uint64_t>(grid.m),
                grid.n, box.radius()};
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;
  return tables_.emplace(key, greens_table(box, omega, grid)).first->second;
}

std::size_t GreensCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return tables_.size();
}

double greens_closed_form_1d(int X, double omega, const GridParams& grid) {
  if (grid.n != 1) fail(ErrorCode::DomainError, "closed form is one-dimensional");
  if (X != 0) fail(ErrorCode::DomainError, "closed form is available at X = 0 only");
  const double A = grid.mass_factor(), c = std::cos(omega);
  const double disc = A * A * c * c - 1.0;
  if (!(disc > 0)) fail(ErrorCode::DomainError, "omega is not in a spectral gap");
  return 0.5 * (c > 0 ? 1.0 : -1.0) / std::sqrt(disc);
}

QuadratureValue greens_l2_norm_sq(double omega, double eps_im, const GridParams& grid, int quad_points) {
  if (!(eps_im > 0 && eps_im < 1)) fail(ErrorCode::DomainError, "eps_im must lie in (0, 1)");
  grid.validate();
  const int n = grid.n;
  const Complex c0 = (2.0 + grid.tau * grid.tau * grid.m * grid.m) * std::cos(Complex(omega, eps_im));
  int N = std::max(8, quad_points);
  QuadratureValue out;
  double prev = 0;
  bool have_prev = false;
  while (true) {
    const long total = pow_int(N, n);
    if (total > kMaxNodes) fail(ErrorCode::NoConvergence, "resolvent norm quadrature hit the node cap");
    std::vector<double> cs(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) cs[std::size_t(k)] = std::cos(2.0 * kPi * k / N);
    long double sum = 0;
    for (long node = 0; node < total; ++node) {
      long rem = node;
      double cos_sum = 0;
      for (int j = 0; j < n; ++j) {
        cos_sum += cs[std::size_t(rem % N)];
        rem /= N;
      }
      sum += 1.0 / std::norm(c0 - (2.0 / n) * cos_sum);
    }
    const double val = double(sum / total);
    out.value = val;
    out.points_per_dim = N;
    if (have_prev) {
      out.est_error = std::abs(val - prev);
      if (out.est_error <= 1e-10 * std::abs(val)) break;
    }
    prev = val;
    have_prev = true;
    N *= 2;
  }
  return out;
}

Field apply_symbol_operator(const Field& phi, const BoxDomain& box, double omega, const GridParams& grid) {
  const double c0 = (2.0 + grid.tau * grid.tau * grid.m * grid.m) * std::cos(omega);
  Field out = Field::Zero(box.size());
  for (Index i = 0; i < box.size(); ++i) {
    if (box.on_boundary(i)) continue;
    Complex nb = 0;
    for (int a = 0; a < box.dim(); ++a) nb += phi[i + box.stride(a)] + phi[i - box.stride(a)];
    out[i] = c0 * phi[i] - nb / double(box.dim());
  }
  return out;
}

}  // namespace dnkg
