#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace dnkg {

using Complex = std::complex<double>;
using Field = Eigen::VectorXcd;
using Index = Eigen::Index;
using Site = Eigen::VectorXi;

struct GridParams {
  int n = 1;
  double eps = 1.0;
  double tau = 1.0;
  double m = 1.0;

  // Throws ConfigError on a non-positive parameter.
  static GridParams make(int n, double eps, double tau, double m);
  // eps chosen so that tau/eps = 1/sqrt(n).
  static GridParams exact_ratio(int n, double tau, double m);
  void validate() const;

  double ratio() const { return tau / eps; }
  double courant_sq() const { return (tau * tau) / (eps * eps); }
  bool ratio_ok() const;
  bool ratio_exact() const;
  double mass_factor() const { return 1.0 + 0.5 * tau * tau * m * m; }
  double omega_m() const;
  double cell_volume() const;
};

// Row-major box [-R, R]^n; the first coordinate varies slowest.
class BoxDomain {
 public:
  BoxDomain() = default;
  BoxDomain(int n, int radius);

  int dim() const { return n_; }
  int radius() const { return radius_; }
  int side() const { return side_; }
  Index size() const { return size_; }
  Index stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  bool contains(const Site& x) const;
  Index index(const Site& x) const;  // OutOfBox if x is outside
  Site site(Index i) const;
  int coord(Index i, int axis) const {
    return static_cast<int>((i / strides_[static_cast<std::size_t>(axis)]) % side_) - radius_;
  }
  Index origin() const { return size_ / 2; }
  bool on_boundary(Index i) const;
  double norm_sq(Index i) const;
  int linf(Index i) const;
  // Parity of the coordinate sum; Lambda = (1,...,1).
  int parity(Index i) const;

  bool operator==(const BoxDomain& o) const { return n_ == o.n_ && radius_ == o.radius_; }

 private:
  int n_ = 1;
  int radius_ = 1;
  int side_ = 3;
  Index size_ = 3;
  std::vector<Index> strides_{1};
};

// Two consecutive time levels: prev = psi^t, curr = psi^{t+1}.
struct FieldState {
  BoxDomain box;
  Field prev;
  Field curr;
  std::int64_t t = 0;

  static FieldState zeros(const BoxDomain& box, std::int64_t t = 0);
  bool finite() const { return prev.allFinite() && curr.allFinite(); }
  void validate() const;
};

}  // namespace dnkg
