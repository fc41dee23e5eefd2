#pragma once

#include <limits>
#include <string>
#include <vector>

namespace dnkg {

// W(lambda) = sum_q C_q lambda^{q+1}. Coefficients are not required to be
// confining here; threshold estimation is where confinement is enforced.
template <typename Scalar>
struct BasicPolynomialPotential {
  std::vector<Scalar> coeffs{Scalar(0)};

  BasicPolynomialPotential() = default;
  explicit BasicPolynomialPotential(std::vector<Scalar> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(Scalar(0));
  }

  int p() const { return static_cast<int>(coeffs.size()) - 1; }
  Scalar leading() const { return coeffs.back(); }
  bool is_confining() const { return p() >= 1 && leading() > Scalar(0); }
  bool is_linear() const {
    for (std::size_t q = 1; q < coeffs.size(); ++q)
      if (coeffs[q] != Scalar(0)) return false;
    return true;
  }
};

using PolynomialPotential = BasicPolynomialPotential<double>;

template <typename S>
S potential_eval(const BasicPolynomialPotential<S>& W, S lam) {
  S acc(0);
  for (auto it = W.coeffs.rbegin(); it != W.coeffs.rend(); ++it) acc = acc * lam + *it;
  return acc * lam;
}

template <typename S>
S potential_deriv(const BasicPolynomialPotential<S>& W, S lam) {
  S acc(0);
  for (int q = W.p(); q >= 0; --q) acc = acc * lam + S(q + 1) * W.coeffs[std::size_t(q)];
  return acc;
}

template <typename S>
S potential_second_deriv(const BasicPolynomialPotential<S>& W, S lam) {
  S acc(0);
  for (int q = W.p(); q >= 1; --q) acc = acc * lam + S((q + 1) * q) * W.coeffs[std::size_t(q)];
  return acc;
}

// B(lam, mu) = sum_q C_q sum_{k=0..q} lam^{q-k} mu^k, via b_q = lam b_{q-1} + mu^q.
template <typename S>
S divided_difference(const BasicPolynomialPotential<S>& W, S lam, S mu) {
  S b(1), mu_pow(1), acc = W.coeffs[0];
  for (int q = 1; q <= W.p(); ++q) {
    mu_pow *= mu;
    b = lam * b + mu_pow;
    acc += W.coeffs[std::size_t(q)] * b;
  }
  return acc;
}

// d/dlam of B; d b_q = b_{q-1} + lam d b_{q-1}.
template <typename S>
S divided_difference_dlambda(const BasicPolynomialPotential<S>& W, S lam, S mu) {
  S b(1), db(0), mu_pow(1), acc(0);
  for (int q = 1; q <= W.p(); ++q) {
    mu_pow *= mu;
    db = b + lam * db;
    b = lam * b + mu_pow;
    acc += W.coeffs[std::size_t(q)] * db;
  }
  return acc;
}

// Thresholds need to say "+inf" or "not applicable" without leaning on IEEE specials.
struct ExtendedReal {
  enum class Kind { Finite, PlusInfinity, MinusInfinity, NotApplicable };
  Kind kind = Kind::Finite;
  double value = 0.0;

  static ExtendedReal finite(double v) { return {Kind::Finite, v}; }
  static ExtendedReal plus_infinity() { return {Kind::PlusInfinity, 0.0}; }
  static ExtendedReal minus_infinity() { return {Kind::MinusInfinity, 0.0}; }
  static ExtendedReal not_applicable() { return {Kind::NotApplicable, 0.0}; }

  bool is_finite() const { return kind == Kind::Finite; }
  // IEEE view for arithmetic; NotApplicable maps to NaN.
  double as_double() const;
  std::string to_string() const;
};

struct TauThresholds {
  ExtendedReal k1, k2, k3;
  ExtendedReal tau1, tau2, tau3;
  bool k2_estimate = true;
  double search_bound = 0.0;
  int grid_points = 0;
};

ExtendedReal tau_from_k(const ExtendedReal& k);

// Real roots of sum_i c_i x^i in [lo, hi], Newton-polished and deduplicated, ascending.
std::vector<double> real_roots(const std::vector<double>& coeffs, double lo = 0.0,
                               double hi = std::numeric_limits<double>::infinity());

// Coefficients of W, W', W'' as ordinary polynomials in lambda.
std::vector<double> potential_poly(const PolynomialPotential& W);
std::vector<double> derivative_poly(const PolynomialPotential& W);
std::vector<double> second_derivative_poly(const PolynomialPotential& W);

// inf of W over lambda >= 0 (exact via roots of W'); -inf sentinel if unbounded.
ExtendedReal potential_infimum(const PolynomialPotential& W);
// inf over lambda > 0 of W(lambda)/lambda = sum_q C_q lambda^q.
ExtendedReal secant_slope_infimum(const PolynomialPotential& W);

struct RealInterval {
  ExtendedReal lo, hi;
  bool lo_closed = false, hi_closed = false;
  bool contains(double x) const;
};
// Range of W'(lambda) over lambda > 0.
RealInterval derivative_range(const PolynomialPotential& W);

double default_search_bound(const PolynomialPotential& W);
TauThresholds tau_thresholds(const PolynomialPotential& W, double search_bound, int grid_points);
TauThresholds tau_thresholds(const PolynomialPotential& W);

}  // namespace dnkg
