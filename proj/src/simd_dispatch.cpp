#include <cstdlib>
#include <cstring>

#include "ellfib/error.hpp"
#include "ellfib/simd.hpp"

namespace ellfib::simd {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(ELLFIB_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detected_isa() {
  static const Isa isa = [] {
    const char* force = std::getenv("ELLFIB_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "0") != 0 && *force != '\0') return Isa::Scalar;
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

namespace {

void check_sizes(PointsSoA z, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const std::size_t n = z.re.size();
  if (z.im.size() != n || a != n || b != n || c != n || d != n)
    throw Error(ErrorCode::InvalidArgument, "simd kernel: mismatched batch sizes");
}

}  // namespace

void poly_eval_deriv(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA value,
                     ValuesSoA deriv, Isa isa) {
  check_sizes(z, value.re.size(), value.im.size(), deriv.re.size(), deriv.im.size());
  if (!isa_available(isa)) throw Error(ErrorCode::InvalidArgument, "requested ISA unavailable");
#if defined(ELLFIB_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) return detail::poly_eval_deriv_avx2(coeffs, z, value, deriv);
#endif
  detail::poly_eval_deriv_scalar(coeffs, z, value, deriv);
}

void poly_eval_deriv(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA value,
                     ValuesSoA deriv) {
  poly_eval_deriv(coeffs, z, value, deriv, detected_isa());
}

void log_derivative(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA ratio,
                    Isa isa) {
  check_sizes(z, ratio.re.size(), ratio.im.size(), ratio.re.size(), ratio.im.size());
  if (!isa_available(isa)) throw Error(ErrorCode::InvalidArgument, "requested ISA unavailable");
#if defined(ELLFIB_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) return detail::log_derivative_avx2(coeffs, z, ratio);
#endif
  detail::log_derivative_scalar(coeffs, z, ratio);
}

void log_derivative(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA ratio) {
  log_derivative(coeffs, z, ratio, detected_isa());
}

}  // namespace ellfib::simd
