// Compiled with -mavx2 only; nothing here may be called unless
// detected_isa() reported AVX2.

#include <immintrin.h>

#include "ellfib/simd.hpp"

namespace ellfib::simd::detail {

namespace {

struct Lanes {
  __m256d pr, pi, dr, di;
};

inline Lanes horner4(std::span<const std::complex<double>> coeffs, __m256d zr, __m256d zi) {
  Lanes s{_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(s.dr, zr), _mm256_mul_pd(s.di, zi));
    const __m256d ti = _mm256_add_pd(_mm256_mul_pd(s.dr, zi), _mm256_mul_pd(s.di, zr));
    s.dr = _mm256_add_pd(tr, s.pr);
    s.di = _mm256_add_pd(ti, s.pi);
    const __m256d ur = _mm256_sub_pd(_mm256_mul_pd(s.pr, zr), _mm256_mul_pd(s.pi, zi));
    const __m256d ui = _mm256_add_pd(_mm256_mul_pd(s.pr, zi), _mm256_mul_pd(s.pi, zr));
    s.pr = _mm256_add_pd(ur, _mm256_set1_pd(it->real()));
    s.pi = _mm256_add_pd(ui, _mm256_set1_pd(it->imag()));
  }
  return s;
}

template <class T>
std::span<T> tail(std::span<T> s, std::size_t from) {
  return s.subspan(from);
}

}  // namespace

void poly_eval_deriv_avx2(std::span<const std::complex<double>> coeffs, PointsSoA z,
                          ValuesSoA value, ValuesSoA deriv) {
  const std::size_t n = z.re.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const Lanes s = horner4(coeffs, _mm256_loadu_pd(&z.re[k]), _mm256_loadu_pd(&z.im[k]));
    _mm256_storeu_pd(&value.re[k], s.pr);
    _mm256_storeu_pd(&value.im[k], s.pi);
    _mm256_storeu_pd(&deriv.re[k], s.dr);
    _mm256_storeu_pd(&deriv.im[k], s.di);
  }
  if (k < n)
    poly_eval_deriv_scalar(coeffs, {tail(z.re, k), tail(z.im, k)},
                           {tail(value.re, k), tail(value.im, k)},
                           {tail(deriv.re, k), tail(deriv.im, k)});
}

void log_derivative_avx2(std::span<const std::complex<double>> coeffs, PointsSoA z,
                         ValuesSoA ratio) {
  const std::size_t n = z.re.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const Lanes s = horner4(coeffs, _mm256_loadu_pd(&z.re[k]), _mm256_loadu_pd(&z.im[k]));
    const __m256d norm = _mm256_add_pd(_mm256_mul_pd(s.pr, s.pr), _mm256_mul_pd(s.pi, s.pi));
    const __m256d re = _mm256_add_pd(_mm256_mul_pd(s.dr, s.pr), _mm256_mul_pd(s.di, s.pi));
    const __m256d im = _mm256_sub_pd(_mm256_mul_pd(s.di, s.pr), _mm256_mul_pd(s.dr, s.pi));
    _mm256_storeu_pd(&ratio.re[k], _mm256_div_pd(re, norm));
    _mm256_storeu_pd(&ratio.im[k], _mm256_div_pd(im, norm));
  }
  if (k < n)
    log_derivative_scalar(coeffs, {tail(z.re, k), tail(z.im, k)},
                          {tail(ratio.re, k), tail(ratio.im, k)});
}

}  // namespace ellfib::simd::detail
