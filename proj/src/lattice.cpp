#include "dnkg/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "dnkg/error.hpp"

namespace dnkg {

GridParams GridParams::make(int n, double eps, double tau, double m) {
  GridParams g{n, eps, tau, m};
  g.validate();
  return g;
}

GridParams GridParams::exact_ratio(int n, double tau, double m) {
  return make(n, tau * std::sqrt(static_cast<double>(n)), tau, m);
}

void GridParams::validate() const {
  if (n < 1) fail(ErrorCode::Config, "dimension n must be >= 1");
  if (!(eps > 0) || !std::isfinite(eps)) fail(ErrorCode::Config, "eps must be positive");
  if (!(tau > 0) || !std::isfinite(tau)) fail(ErrorCode::Config, "tau must be positive");
  if (!(m > 0) || !std::isfinite(m)) fail(ErrorCode::Config, "m must be positive");
}

// tau/eps <= 1/sqrt(n); the 1e-12 slack absorbs the rounding in tau = eps/sqrt(n).
bool GridParams::ratio_ok() const { return ratio() <= 1.0 / std::sqrt(double(n)) + 1e-12; }

bool GridParams::ratio_exact() const {
  return std::abs(ratio() - 1.0 / std::sqrt(double(n))) <= 1e-12;
}

double GridParams::omega_m() const { return std::acos(1.0 / mass_factor()); }

double GridParams::cell_volume() const { return std::pow(eps, n); }

BoxDomain::BoxDomain(int n, int radius) : n_(n), radius_(radius), side_(2 * radius + 1) {
  if (n < 1) fail(ErrorCode::Config, "box dimension must be >= 1");
  if (radius < 1) fail(ErrorCode::Config, "box radius must be >= 1");
  strides_.assign(static_cast<std::size_t>(n), 1);
  Index s = 1;
  for (int a = n - 1; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] = s;
    s *= side_;
  }
  size_ = s;
}

bool BoxDomain::contains(const Site& x) const {
  if (x.size() != n_) return false;
  for (int a = 0; a < n_; ++a)
    if (std::abs(x[a]) > radius_) return false;
  return true;
}

Index BoxDomain::index(const Site& x) const {
  if (x.size() != n_) fail(ErrorCode::DimensionError, "site has wrong dimension");
  if (!contains(x)) fail(ErrorCode::OutOfBox, "site outside box of radius " + std::to_string(radius_));
  Index i = 0;
  for (int a = 0; a < n_; ++a) i += Index(x[a] + radius_) * stride(a);
  return i;
}

Site BoxDomain::site(Index i) const {
  if (i < 0 || i >= size_) fail(ErrorCode::OutOfBox, "index out of range");
  Site x(n_);
  for (int a = 0; a < n_; ++a) x[a] = coord(i, a);
  return x;
}

bool BoxDomain::on_boundary(Index i) const { return linf(i) == radius_; }

double BoxDomain::norm_sq(Index i) const {
  double s = 0;
  for (int a = 0; a < n_; ++a) {
    const double c = coord(i, a);
    s += c * c;
  }
  return s;
}

int BoxDomain::linf(Index i) const {
  int r = 0;
  for (int a = 0; a < n_; ++a) r = std::max(r, std::abs(coord(i, a)));
  return r;
}

int BoxDomain::parity(Index i) const {
  int s = 0;
  for (int a = 0; a < n_; ++a) s += coord(i, a);
  return ((s % 2) + 2) % 2;
}

FieldState FieldState::zeros(const BoxDomain& box, std::int64_t t) {
  return FieldState{box, Field::Zero(box.size()), Field::Zero(box.size()), t};
}

void FieldState::validate() const {
  if (prev.size() != box.size() || curr.size() != box.size())
    fail(ErrorCode::DimensionError, "field length does not match box");
  if (!finite()) fail(ErrorCode::DomainError, "field contains non-finite values");
}

}  // namespace dnkg
