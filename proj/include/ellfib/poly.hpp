#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ellfib {

using cplx = std::complex<double>;

/// Dense polynomial with complex coefficients, ascending degree.
///
/// The stored coefficient list never ends in an exact zero; the zero
/// polynomial has an empty list and degree -1.  Evaluation uses Horner's
/// rule in a fixed order with explicit real arithmetic, so results are
/// reproducible bit for bit (and match the batched kernels in simd.hpp).
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<cplx> coeffs);
  ComplexPoly(std::initializer_list<cplx> coeffs);

  static ComplexPoly monomial(std::size_t degree, cplx coeff = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }
  cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  /// Index of the lowest nonzero coefficient (order of vanishing at 0), or -1 for zero.
  int lowest_order() const noexcept;

  cplx operator()(cplx z) const noexcept;
  /// Value and first derivative in a single Horner sweep.
  void eval_with_derivative(cplx z, cplx& value, cplx& deriv) const noexcept;

  ComplexPoly derivative() const;
  /// Coefficients of p(center + t) as a polynomial in t (Taylor expansion).
  ComplexPoly shifted(cplx center) const;
  /// Zero out coefficients with |c| <= rel_tol * scale and re-trim.
  ComplexPoly chopped(double rel_tol, double scale) const;

  /// Sum of |c_k|; used as the magnitude scale for tolerances.
  double l1_norm() const noexcept;
  double max_abs_coeff() const noexcept;

  ComplexPoly& operator+=(const ComplexPoly& rhs);
  ComplexPoly& operator-=(const ComplexPoly& rhs);
  ComplexPoly& operator*=(cplx s);

  friend ComplexPoly operator+(ComplexPoly lhs, const ComplexPoly& rhs) { return lhs += rhs; }
  friend ComplexPoly operator-(ComplexPoly lhs, const ComplexPoly& rhs) { return lhs -= rhs; }
  friend ComplexPoly operator*(const ComplexPoly& lhs, const ComplexPoly& rhs);
  friend ComplexPoly operator*(ComplexPoly p, cplx s) { return p *= s; }
  friend ComplexPoly operator*(cplx s, ComplexPoly p) { return p *= s; }
  friend bool operator==(const ComplexPoly&, const ComplexPoly&) = default;

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

}  // namespace ellfib
