#include "dnkg/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dnkg/error.hpp"
#include "dnkg/fft.hpp"

namespace dnkg {

FieldState linear_free_propagator(const FieldState& initial, std::int64_t t, const GridParams& grid) {
  initial.validate();
  grid.validate();
  if (t == 0) return initial;
  const BoxDomain& box = initial.box;
  const int n = box.dim(), side = box.side();
  const double A = grid.mass_factor(), r2 = grid.courant_sq();

  Field u0 = initial.prev, u1 = initial.curr;
  fft_nd(u0, n, side, false);
  fft_nd(u1, n, side, false);

  Field a(box.size()), b(box.size());
  for (Index i = 0; i < box.size(); ++i) {
    double sum = 0;
    Index rem = i;
    for (int ax = n - 1; ax >= 0; --ax) {
      const int k = int(rem % side);
      rem /= side;
      sum += 1.0 - std::cos(2.0 * std::numbers::pi * k / side);
    }
    const double c = std::clamp((1.0 - r2 * sum) / A, -1.0, 1.0);
    const double w = std::acos(c);
    const double sw = std::sin(w);
    if (std::abs(sw) < 1e-14) fail(ErrorCode::SingularSplit, "sin(omega) vanishes at a dual node");
    const Complex ep = std::polar(1.0, w), em = std::conj(ep);
    // u0 = P+ + P-, u1 = e^{iw} P+ + e^{-iw} P-.
    const Complex pp = (u1[i] - em * u0[i]) / Complex(0.0, 2.0 * sw);
    const Complex pm = u0[i] - pp;
    const double tt = double(t);
    a[i] = pp * std::polar(1.0, w * tt) + pm * std::polar(1.0, -w * tt);
    b[i] = pp * std::polar(1.0, w * (tt + 1)) + pm * std::polar(1.0, -w * (tt + 1));
  }
  fft_nd(a, n, side, true);
  fft_nd(b, n, side, true);
  return FieldState{box, std::move(a), std::move(b), initial.t + t};
}

}  // namespace dnkg
