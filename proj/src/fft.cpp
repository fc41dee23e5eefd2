#include "dnkg/fft.hpp"

#include <unsupported/Eigen/FFT>

#include "dnkg/error.hpp"

namespace dnkg {

void fft_nd(Field& data, int n, int side, bool inverse) {
  Index total = 1;
  for (int a = 0; a < n; ++a) total *= side;
  if (data.size() != total) fail(ErrorCode::DimensionError, "fft buffer size mismatch");

  Eigen::FFT<double> fft;
  std::vector<Complex> line(static_cast<std::size_t>(side)), out(static_cast<std::size_t>(side));
  Index stride = 1;
  for (int a = n - 1; a >= 0; --a) {
    const Index block = stride * side;
    for (Index base = 0; base < total; base += block) {
      for (Index off = 0; off < stride; ++off) {
        const Index start = base + off;
        for (int k = 0; k < side; ++k) line[std::size_t(k)] = data[start + k * stride];
        if (inverse) fft.inv(out, line); else fft.fwd(out, line);
        for (int k = 0; k < side; ++k) data[start + k * stride] = out[std::size_t(k)];
      }
    }
    stride = block;
  }
}

}  // namespace dnkg
