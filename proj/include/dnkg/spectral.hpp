#pragma once

#include <array>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "dnkg/lattice.hpp"

namespace dnkg {

struct SpectralParams {
  double omega_m = 0.0;
  std::array<double, 2> gap0{};    // open (-w_m, w_m)
  std::array<double, 2> gap_pi{};  // open (pi - w_m, pi + w_m), mod 2pi
  std::vector<double> sigma_set;   // in (-pi, pi], ascending, with multiplicity of +- pairs
  std::array<double, 4> edges{};   // -w_m, w_m, pi - w_m, pi + w_m

  static SpectralParams from(const GridParams& grid);
  bool in_gap(double omega) const;
  bool in_gap0(double omega) const;
};

// Distance from omega to the nearest representative of target on the circle.
double circle_distance(double omega, double target);

double symbol(const Eigen::VectorXd& xi, double omega, const GridParams& grid);
Complex symbol(const Eigen::VectorXd& xi, Complex omega, const GridParams& grid);
bool in_continuous_spectrum(double omega, const GridParams& grid);
double dispersion_omega(const Eigen::VectorXd& xi, const GridParams& grid);

struct GreensValue {
  Complex value;
  int points_per_dim = 0;
  double est_error = 0.0;
  bool degraded = false;  // singular nodes skipped
};

GreensValue greens(const Site& X, Complex omega, const GridParams& grid, int quad_points = 16);

// Values over a whole box from one inverse FFT of 1/a on an N^n grid. The
// N-point table is the exact Green's function of the N-periodic lattice.
struct GreensTable {
  double omega = 0.0;
  BoxDomain box;
  Field values;
  int points_per_dim = 0;
  double est_error = 0.0;

  Complex at(const Site& x) const { return values[box.index(x)]; }
  Complex origin() const { return values[box.origin()]; }
};

GreensTable greens_table(const BoxDomain& box, double omega, const GridParams& grid, int quad_points = 0);
// One pass with period N (>= 2R + 2); est_error is left at 0.
GreensTable periodic_greens_table(const BoxDomain& box, double omega, const GridParams& grid, int N);

// Memoises tables by the exact bits of (omega, grid, box); safe across threads.
class GreensCache {
 public:
  const GreensTable& get(const BoxDomain& box, double omega, const GridParams& grid);
  std::size_t size() const;

 private:
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t, int, int>;
  mutable std::mutex mu_;
  std::map<Key, GreensTable> tables_;
};

// X = 0 only, n = 1.
double greens_closed_form_1d(int X, double omega, const GridParams& grid);

struct QuadratureValue {
  double value = 0.0;
  int points_per_dim = 0;
  double est_error = 0.0;
};
QuadratureValue greens_l2_norm_sq(double omega, double eps_im, const GridParams& grid, int quad_points = 64);

// Applies the stationary operator with symbol a(., omega) to a profile on the box (interior only).
Field apply_symbol_operator(const Field& phi, const BoxDomain& box, double omega, const GridParams& grid);

}  // namespace dnkg
