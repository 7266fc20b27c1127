#include "ellfib/simd.hpp"

namespace ellfib::simd::detail {

void poly_eval_deriv_scalar(std::span<const std::complex<double>> coeffs, PointsSoA z,
                            ValuesSoA value, ValuesSoA deriv) {
  const std::size_t n = z.re.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double zr = z.re[k], zi = z.im[k];
    double pr = 0.0, pi = 0.0, dr = 0.0, di = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      const double tr = dr * zr - di * zi;
      const double ti = dr * zi + di * zr;
      dr = tr + pr;
      di = ti + pi;
      const double ur = pr * zr - pi * zi;
      const double ui = pr * zi + pi * zr;
      pr = ur + it->real();
      pi = ui + it->imag();
    }
    value.re[k] = pr;
    value.im[k] = pi;
    deriv.re[k] = dr;
    deriv.im[k] = di;
  }
}

void log_derivative_scalar(std::span<const std::complex<double>> coeffs, PointsSoA z,
                           ValuesSoA ratio) {
  const std::size_t n = z.re.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double zr = z.re[k], zi = z.im[k];
    double pr = 0.0, pi = 0.0, dr = 0.0, di = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      const double tr = dr * zr - di * zi;
      const double ti = dr * zi + di * zr;
      dr = tr + pr;
      di = ti + pi;
      const double ur = pr * zr - pi * zi;
      const double ui = pr * zi + pi * zr;
      pr = ur + it->real();
      pi = ui + it->imag();
    }
    const double norm = pr * pr + pi * pi;
    ratio.re[k] = (dr * pr + di * pi) / norm;
    ratio.im[k] = (di * pr - dr * pi) / norm;
  }
}

}  // namespace ellfib::simd::detail
