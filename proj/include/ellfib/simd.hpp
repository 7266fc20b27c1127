#pragma once

// Batched complex-polynomial kernels.  Each kernel has a scalar reference
// implementation and an AVX2 variant; the variant is picked once at runtime
// from CPUID.  Both variants perform the same IEEE operations in the same
// order (no FMA contraction), so their outputs are bit-identical.

#include <complex>
#include <span>
#include <string_view>

namespace ellfib::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// Best ISA supported by this CPU and build.  ELLFIB_FORCE_SCALAR=1 in the
/// environment pins the scalar path.
Isa detected_isa();
bool isa_available(Isa isa);

/// Split-complex view of a batch of points (structure of arrays).
struct PointsSoA {
  std::span<const double> re;
  std::span<const double> im;
};

struct ValuesSoA {
  std::span<double> re;
  std::span<double> im;
};

/// value[k] = p(z_k), deriv[k] = p'(z_k); coeffs ascending.  Horner sweep
/// from the top coefficient down.
void poly_eval_deriv(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA value,
                     ValuesSoA deriv, Isa isa);
void poly_eval_deriv(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA value,
                     ValuesSoA deriv);

/// ratio[k] = p'(z_k) / p(z_k).
void log_derivative(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA ratio,
                    Isa isa);
void log_derivative(std::span<const std::complex<double>> coeffs, PointsSoA z, ValuesSoA ratio);

namespace detail {
void poly_eval_deriv_scalar(std::span<const std::complex<double>> coeffs, PointsSoA z,
                            ValuesSoA value, ValuesSoA deriv);
void log_derivative_scalar(std::span<const std::complex<double>> coeffs, PointsSoA z,
                           ValuesSoA ratio);
#if defined(ELLFIB_HAVE_AVX2_KERNELS)
void poly_eval_deriv_avx2(std::span<const std::complex<double>> coeffs, PointsSoA z,
                          ValuesSoA value, ValuesSoA deriv);
void log_derivative_avx2(std::span<const std::complex<double>> coeffs, PointsSoA z,
                         ValuesSoA ratio);
#endif
}  // namespace detail

}  // namespace ellfib::simd
