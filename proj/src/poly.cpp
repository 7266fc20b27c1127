#include "ellfib/poly.hpp"

#include <algorithm>
#include <cmath>

namespace ellfib {

namespace {

// (a + ib)(c + id) written out so the operation order never depends on the
// std::complex implementation.
inline void cmul(double a, double b, double c, double d, double& re, double& im) {
  re = a * c - b * d;
  im = a * d + b * c;
}

}  // namespace

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ComplexPoly::ComplexPoly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(); }

ComplexPoly ComplexPoly::monomial(std::size_t degree, cplx coeff) {
  std::vector<cplx> c(degree + 1);
  c[degree] = coeff;
  return ComplexPoly(std::move(c));
}

void ComplexPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

int ComplexPoly::lowest_order() const noexcept {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != cplx{}) return static_cast<int>(k);
  return -1;
}

cplx ComplexPoly::operator()(cplx z) const noexcept {
  double pr = 0.0, pi = 0.0;
  const double zr = z.real(), zi = z.imag();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    double tr, ti;
    cmul(pr, pi, zr, zi, tr, ti);
    pr = tr + it->real();
    pi = ti + it->imag();
  }
  return {pr, pi};
}

void ComplexPoly::eval_with_derivative(cplx z, cplx& value, cplx& deriv) const noexcept {
  double pr = 0.0, pi = 0.0, dr = 0.0, di = 0.0;
  const double zr = z.real(), zi = z.imag();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    double tr, ti;
    cmul(dr, di, zr, zi, tr, ti);
    dr = tr + pr;
    di = ti + pi;
    cmul(pr, pi, zr, zi, tr, ti);
    pr = tr + it->real();
    pi = ti + it->imag();
  }
  value = {pr, pi};
  deriv = {dr, di};
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::shifted(cplx center) const {
  // Repeated synthetic division by (x - center).
  std::vector<cplx> work(coeffs_);
  const std::size_t n = work.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) work[k - 1] += center * work[k];
  return ComplexPoly(std::move(work));
}

ComplexPoly ComplexPoly::chopped(double rel_tol, double scale) const {
  std::vector<cplx> c(coeffs_);
  for (auto& x : c)
    if (std::abs(x) <= rel_tol * scale) x = cplx{};
  return ComplexPoly(std::move(c));
}

double ComplexPoly::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

double ComplexPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

ComplexPoly& ComplexPoly::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

ComplexPoly operator*(const ComplexPoly& lhs, const ComplexPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<cplx> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return ComplexPoly(std::move(out));
}

}  // namespace ellfib
