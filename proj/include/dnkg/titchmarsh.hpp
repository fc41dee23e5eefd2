#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dnkg/lattice.hpp"

namespace dnkg {

// Angle on R mod 2pi. When `rational` is set the angle is exactly
// (num/den) pi with num in [0, 2 den), and sums stay exact.
struct CircleAngle {
  struct Ratio {
    std::int64_t num = 0, den = 1;
    bool operator==(const Ratio&) const = default;
  };
  double value = 0.0;  // in [0, 2pi)
  std::optional<Ratio> rational;

  static CircleAngle radians(double a);
  static CircleAngle pi_fraction(std::int64_t num, std::int64_t den);
  CircleAngle operator+(const CircleAngle& o) const;
  CircleAngle operator-() const;
  // Representative in (-pi/2, pi/2] of the angle mod pi.
  double mod_pi() const;
};

// Angles within this distance are merged unless both are rational.
inline constexpr double kAngleMergeTol = 1e-12;
// A merged weight is dropped when it is this small relative to the terms summed into it.
inline constexpr double kCancelTol = 1e-13;

struct Atom {
  CircleAngle angle;
  Complex weight;
};

// Finite sum of point masses; always held in canonical form.
class CircleMeasure {
 public:
  CircleMeasure() = default;
  explicit CircleMeasure(std::vector<Atom> atoms);
  static CircleMeasure delta(CircleAngle a, Complex w = 1.0) { return CircleMeasure({{a, w}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  CircleMeasure operator+(const CircleMeasure& o) const;
  CircleMeasure operator-(const CircleMeasure& o) const;
  CircleMeasure operator*(Complex c) const;

  // Atoms whose angle has a representative in the arc (lo, hi) of the real line,
  // hi - lo < 2pi. An endpoint is included when the matching flag is set.
  CircleMeasure restrict(double lo, double hi, bool lo_closed = false, bool hi_closed = false) const;

 private:
  std::vector<Atom> atoms_;
};

CircleMeasure convolve(const CircleMeasure& f, const CircleMeasure& g);
CircleMeasure shift(const CircleMeasure& f, const CircleAngle& y);  // atoms move by +y
CircleMeasure sharp(const CircleMeasure& f);
// Same atoms (angles to kAngleMergeTol) with weights within tol * max(1, |w|).
bool approx_equal(const CircleMeasure& f, const CircleMeasure& g, double tol = 1e-12);

struct ModPiHull {
  bool empty = true;
  double lo = 0.0, hi = 0.0;  // lo <= hi, both in (-pi/2, pi/2)
  double length() const { return empty ? 0.0 : hi - lo; }
};
ModPiHull supp_mod_pi_hull(const CircleMeasure& f);

// Smallest closed arc I (as real numbers, lo <= hi < lo + pi) with supp f in I + {0, pi}.
struct ArcInterval {
  bool empty = true;
  double lo = 0.0, hi = 0.0;
  double length() const { return empty ? 0.0 : hi - lo; }
};
ArcInterval minimal_mod_pi_arc(const CircleMeasure& f);

struct TwoIntervalReport {
  ArcInterval I, J, K;     // K is empty when f * g = 0
  double lambda = 0.0;     // +inf when f * g = 0
  double rho = 0.0;
  bool lambda_positive = false, rho_positive = false;
  // s with f = s S_pi f and g = -s S_pi g near the left (right) end of I and J;
  // in the form f + sigma S_pi f = 0 this is sigma = -s.
  std::optional<int> left_symmetry;
  std::optional<int> right_symmetry;
  bool consistent = false;         // both equivalences agree
};
TwoIntervalReport check_two_interval_theorem(const CircleMeasure& f, const CircleMeasure& g);

struct PowersReport {
  ArcInterval I, K;
  int p = 1;
  CircleMeasure power;
  double lo_error = 0.0, hi_error = 0.0;  // |inf K - p inf I|, |sup K - p sup I|
  bool equal = false;                      // both within 1e-10
};
PowersReport check_powers_theorem(const CircleMeasure& f, int p);

struct PointSupportReport {
  ModPiHull I;
  int sigma = 1;             // (f + sigma S_pi f) = 0 on (sup I - pi, sup I); used when |I| > 0
  bool support_ok = false;   // supp f within {inf I, sup I, pi + inf I, pi + sup I}
  CircleMeasure mu, nu;
  double reconstruction_error = 0.0;  // max weight error of mu + S mu + nu - S nu against f
};
PointSupportReport classify_point_support(const CircleMeasure& f);

}  // namespace dnkg
