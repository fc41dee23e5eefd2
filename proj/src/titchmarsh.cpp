#include "dnkg/titchmarsh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dnkg/error.hpp"

namespace dnkg {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Correctly rounded sum via non-overlapping partials, so x + y - x - y is 0.
double exact_sum(const std::vector<double>& xs) {
  std::vector<double> partials;
  for (double x : xs) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  // Sum from the top, then fix the half-way case so the result is correctly
  // rounded and therefore independent of input order.
  if (partials.empty()) return 0.0;
  std::size_t i = partials.size() - 1;
  double hi = partials[i], lo = 0.0;
  while (i > 0) {
    const double x = hi, y = partials[--i];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  if (i > 0 && ((lo < 0 && partials[i - 1] < 0) || (lo > 0 && partials[i - 1] > 0))) {
    const double y = lo * 2, x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

CircleAngle::Ratio reduce(__int128 num, __int128 den) {
  if (den <= 0) fail(ErrorCode::DomainError, "angle denominator must be positive");
  const __int128 period = 2 * den;
  num %= period;
  if (num < 0) num += period;
  __int128 a = num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  const __int128 g = a == 0 ? den : a;
  return {static_cast<std::int64_t>(num / g), static_cast<std::int64_t>(den / g)};
}

double wrap_2pi(double a) {
  double v = std::fmod(a, kTwoPi);
  if (v < 0) v += kTwoPi;
  if (v >= kTwoPi - kAngleMergeTol) v = 0.0;
  return v;
}

// Representative of angle in [base, base + period).
double lift(double angle, double base, double period) {
  double x = std::fmod(angle - base, period);
  if (x < 0) x += period;
  if (x >= period - kAngleMergeTol) x = 0.0;
  return base + x;
}

bool same_angle(const CircleAngle& a, const CircleAngle& b) {
  if (a.rational && b.rational) return *a.rational == *b.rational;
  const double d = std::abs(a.value - b.value);
  return std::min(d, kTwoPi - d) <= kAngleMergeTol;
}

std::vector<Atom> canonical(std::vector<Atom> in) {
  for (auto& a : in)
    if (!a.angle.rational) a.angle.value = wrap_2pi(a.angle.value);
  std::stable_sort(in.begin(), in.end(),
                   [](const Atom& a, const Atom& b) { return a.angle.value < b.angle.value; });
  std::vector<Atom> out;
  std::size_t i = 0;
  while (i < in.size()) {
    std::size_t j = i + 1;
    while (j < in.size() && same_angle(in[i].angle, in[j].angle)) ++j;
    std::vector<double> re, im;
    double scale = 0;
    for (std::size_t k = i; k < j; ++k) {
      re.push_back(in[k].weight.real());
      im.push_back(in[k].weight.imag());
      scale += std::abs(in[k].weight);
    }
    const Complex w(exact_sum(re), exact_sum(im));
    if (std::abs(w) > kCancelTol * scale) out.push_back({in[i].angle, w});
    i = j;
  }
  // Wrap-around: an atom just below 2pi merges with one at 0.
  if (out.size() >= 2 && same_angle(out.front().angle, out.back().angle)) {
    const Complex w = out.front().weight + out.back().weight;
    const double scale = std::abs(out.front().weight) + std::abs(out.back().weight);
    out.pop_back();
    if (std::abs(w) > kCancelTol * scale)
      out.front().weight = w;
    else
      out.erase(out.begin());
  }
  return out;
}

ArcInterval arc_of(const std::vector<double>& positions) {
  ArcInterval r;
  if (positions.empty()) return r;
  r.empty = false;
  r.lo = *std::min_element(positions.begin(), positions.end());
  r.hi = *std::max_element(positions.begin(), positions.end());
  return r;
}

}  // namespace

CircleAngle CircleAngle::radians(double a) {
  CircleAngle c;
  c.value = wrap_2pi(a);
  return c;
}

CircleAngle CircleAngle::pi_fraction(std::int64_t num, std::int64_t den) {
  CircleAngle c;
  c.rational = reduce(num, den);
  c.value = kPi * double(c.rational->num) / double(c.rational->den);
  return c;
}

CircleAngle CircleAngle::operator+(const CircleAngle& o) const {
  if (rational && o.rational) {
    const __int128 d1 = rational->den, d2 = o.rational->den;
    const __int128 g = std::gcd(rational->den, o.rational->den);
    const __int128 den = d1 / g * d2;
    const auto r = reduce(rational->num * (den / d1) + o.rational->num * (den / d2), den);
    return pi_fraction(r.num, r.den);
  }
  return radians(value + o.value);
}

CircleAngle CircleAngle::operator-() const {
  if (rational) return pi_fraction(-rational->num, rational->den);
  return radians(-value);
}

double CircleAngle::mod_pi() const {
  if (rational) {
    std::int64_t r = rational->num % rational->den;
    if (2 * r > rational->den) r -= rational->den;
    return kPi * double(r) / double(rational->den);
  }
  double x = std::remainder(value, kPi);
  if (x <= -kPi / 2) x += kPi;
  return x;
}

CircleMeasure::CircleMeasure(std::vector<Atom> atoms) : atoms_(canonical(std::move(atoms))) {}

CircleMeasure CircleMeasure::operator+(const CircleMeasure& o) const {
  std::vector<Atom> all = atoms_;
  all.insert(all.end(), o.atoms_.begin(), o.atoms_.end());
  return CircleMeasure(std::move(all));
}

CircleMeasure CircleMeasure::operator-(const CircleMeasure& o) const { return *this + o * -1.0; }

CircleMeasure CircleMeasure::operator*(Complex c) const {
  std::vector<Atom> all = atoms_;
  for (auto& a : all) a.weight *= c;
  return CircleMeasure(std::move(all));
}

CircleMeasure CircleMeasure::restrict(double lo, double hi, bool lo_closed, bool hi_closed) const {
  if (!(hi - lo < kTwoPi)) fail(ErrorCode::DomainError, "restriction arc must be shorter than 2pi");
  std::vector<Atom> kept;
  for (const auto& a : atoms_) {
    const double x = lift(a.angle.value, lo, kTwoPi);
    const bool at_lo = std::abs(x - lo) <= kAngleMergeTol;
    const bool at_hi = std::abs(x - hi) <= kAngleMergeTol;
    if (at_lo ? lo_closed : at_hi ? hi_closed : (x > lo && x < hi)) kept.push_back(a);
  }
  return CircleMeasure(std::move(kept));
}

CircleMeasure convolve(const CircleMeasure& f, const CircleMeasure& g) {
  std::vector<Atom> all;
  all.reserve(f.size() * g.size());
  for (const auto& a : f.atoms())
    for (const auto& b : g.atoms()) all.push_back({a.angle + b.angle, a.weight * b.weight});
  return CircleMeasure(std::move(all));
}

CircleMeasure shift(const CircleMeasure& f, const CircleAngle& y) {
  std::vector<Atom> all = f.atoms();
  for (auto& a : all) a.angle = a.angle + y;
  return CircleMeasure(std::move(all));
}

CircleMeasure sharp(const CircleMeasure& f) {
  std::vector<Atom> all = f.atoms();
  for (auto& a : all) {
    a.angle = -a.angle;
    a.weight = std::conj(a.weight);
  }
  return CircleMeasure(std::move(all));
}

bool approx_equal(const CircleMeasure& f, const CircleMeasure& g, double tol) {
  if (f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& a = f.atoms()[i];
    const auto& b = g.atoms()[i];
    if (!same_angle(a.angle, b.angle)) return false;
    if (std::abs(a.weight - b.weight) > tol * std::max(1.0, std::abs(a.weight))) return false;
  }
  return true;
}

ModPiHull supp_mod_pi_hull(const CircleMeasure& f) {
  ModPiHull h;
  for (const auto& a : f.atoms()) {
    const bool excluded = a.angle.rational ? 2 * (a.angle.rational->num % a.angle.rational->den) ==
                                                 a.angle.rational->den
                                           : std::abs(std::abs(std::remainder(a.angle.value, kPi)) - kPi / 2) <=
                                                 kAngleMergeTol;
    if (excluded) fail(ErrorCode::OnExcludedPoints, "atom at +-pi/2 has no mod-pi position");
    const double x = a.angle.mod_pi();
    if (h.empty) {
      h.empty = false;
      h.lo = h.hi = x;
    } else {
      h.lo = std::min(h.lo, x);
      h.hi = std::max(h.hi, x);
    }
  }
  return h;
}

ArcInterval minimal_mod_pi_arc(const CircleMeasure& f) {
  std::vector<double> y;
  for (const auto& a : f.atoms()) y.push_back(lift(a.angle.value, 0.0, kPi));
  if (y.empty()) return {};
  std::sort(y.begin(), y.end());
  // The arc starts right after the widest gap between consecutive positions.
  std::size_t start = 0;
  double widest = y.front() + kPi - y.back();
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] - y[i - 1] > widest + kAngleMergeTol) {
      widest = y[i] - y[i - 1];
      start = i;
    }
  ArcInterval r;
  r.empty = false;
  r.lo = y[start];
  r.hi = start == 0 ? y.back() : y[start - 1] + kPi;
  // Start in [-pi/2, pi/2], so arcs inside (-pi/2, pi/2) match supp_mod_pi_hull.
  const double shift_to = std::remainder(r.lo, kPi) - r.lo;
  r.lo += shift_to;
  r.hi += shift_to;
  return r;
}

namespace {

// Positions of the atoms of h lifted into [base, base + pi).
std::vector<double> positions(const CircleMeasure& h, double base) {
  std::vector<double> x;
  for (const auto& a : h.atoms()) x.push_back(lift(a.angle.value, base, kPi));
  return x;
}

const CircleAngle& pi_angle() {
  static const CircleAngle a = CircleAngle::pi_fraction(1, 1);
  return a;
}

double clamp_small(double v) { return std::abs(v) <= 1e-12 ? 0.0 : v; }

}  // namespace

TwoIntervalReport check_two_interval_theorem(const CircleMeasure& f, const CircleMeasure& g) {
  if (f.empty() || g.empty()) fail(ErrorCode::HypothesisViolation, "both measures must be nonzero");
  TwoIntervalReport r;
  r.I = minimal_mod_pi_arc(f);
  r.J = minimal_mod_pi_arc(g);
  if (r.I.length() + r.J.length() >= kPi)
    fail(ErrorCode::HypothesisViolation, "|I| + |J| must be below pi");
  const CircleMeasure h = convolve(f, g);
  if (h.empty()) {
    r.lambda = r.rho = kInf;
  } else {
    r.K = arc_of(positions(h, r.I.lo + r.J.lo));
    r.lambda = clamp_small(r.K.lo - r.I.lo - r.J.lo);
    r.rho = clamp_small(r.I.hi + r.J.hi - r.K.hi);
  }
  r.lambda_positive = r.lambda > 0;
  r.rho_positive = r.rho > 0;

  const CircleMeasure fs = shift(f, pi_angle()), gs = shift(g, pi_angle());
  for (int sigma : {1, -1}) {
    const CircleMeasure F = f + fs * double(sigma), G = g - gs * double(sigma);
    // At lambda = 0 the open arc holds no atoms; the nontrivial limit adds inf I.
    auto left = [&](const CircleMeasure& u, const ArcInterval& A) {
      if (std::isinf(r.lambda)) return u.empty();
      if (r.lambda > 0) return u.restrict(A.hi - kPi, A.lo + r.lambda).empty();
      return u.restrict(A.hi - kPi, A.lo, false, true).empty();
    };
    auto right = [&](const CircleMeasure& u, const ArcInterval& A) {
      if (std::isinf(r.rho)) return u.empty();
      if (r.rho > 0) return u.restrict(A.hi - r.rho, A.lo + kPi).empty();
      return u.restrict(A.hi, A.lo + kPi, true, false).empty();
    };
    // f + sigma S f = 0 means f = -sigma S f.
    if (!r.left_symmetry && left(F, r.I) && left(G, r.J)) r.left_symmetry = -sigma;
    if (!r.right_symmetry && right(F, r.I) && right(G, r.J)) r.right_symmetry = -sigma;
  }
  r.consistent =
      r.lambda_positive == r.left_symmetry.has_value() && r.rho_positive == r.right_symmetry.has_value();
  return r;
}

PowersReport check_powers_theorem(const CircleMeasure& f, int p) {
  if (p < 1) fail(ErrorCode::HypothesisViolation, "power must be at least 1");
  if (f.empty()) fail(ErrorCode::HypothesisViolation, "measure must be nonzero");
  PowersReport r;
  r.p = p;
  r.I = minimal_mod_pi_arc(f);
  if (r.I.length() >= kPi / p) fail(ErrorCode::HypothesisViolation, "|I| must be below pi / p");
  r.power = f;
  for (int k = 1; k < p; ++k) r.power = convolve(r.power, f);
  if (r.power.empty()) return r;
  r.K = arc_of(positions(r.power, p * r.I.lo));
  r.lo_error = std::abs(r.K.lo - p * r.I.lo);
  r.hi_error = std::abs(r.K.hi - p * r.I.hi);
  r.equal = r.lo_error <= 1e-10 && r.hi_error <= 1e-10;
  return r;
}

PointSupportReport classify_point_support(const CircleMeasure& f) {
  if (f.empty()) fail(ErrorCode::HypothesisViolation, "measure must be nonzero");
  PointSupportReport r;
  r.I = supp_mod_pi_hull(f);
  if (r.I.length() >= kPi / 2) fail(ErrorCode::HypothesisViolation, "|I| must be below pi/2");
  const CircleMeasure h = convolve(f, sharp(f));
  for (const auto& a : h.atoms()) {
    const double v = a.angle.value;
    if (!(v <= kAngleMergeTol || std::abs(v - kPi) <= kAngleMergeTol))
      fail(ErrorCode::HypothesisViolation,
           "f * f# has an atom at " + std::to_string(v) + ", outside {0, pi}");
  }
  r.support_ok = true;
  for (const auto& a : f.atoms()) {
    const double x = a.angle.mod_pi();
    if (std::abs(x - r.I.lo) > kAngleMergeTol && std::abs(x - r.I.hi) > kAngleMergeTol) r.support_ok = false;
  }
  const CircleMeasure fs = shift(f, pi_angle());
  if (r.I.length() <= kAngleMergeTol) {
    r.mu = ((f + fs) * 0.5).restrict(r.I.lo, r.I.lo, true, true);
    r.nu = ((f - fs) * 0.5).restrict(r.I.lo, r.I.lo, true, true);
  } else {
    r.sigma = (f + fs).restrict(r.I.hi - kPi, r.I.hi).empty() ? 1 : -1;
    const CircleMeasure upper = f.restrict(r.I.lo, kPi / 2), lower = f.restrict(-kPi / 2, r.I.hi);
    r.mu = r.sigma == 1 ? upper : lower;
    r.nu = r.sigma == 1 ? lower : upper;
  }
  const CircleMeasure rebuilt = r.mu + shift(r.mu, pi_angle()) + r.nu - shift(r.nu, pi_angle());
  const CircleMeasure diff = rebuilt - f;
  for (const auto& a : diff.atoms()) r.reconstruction_error = std::max(r.reconstruction_error, std::abs(a.weight));
  return r;
}

}  // namespace dnkg
