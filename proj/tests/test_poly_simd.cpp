#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <vector>

#include "ellfib/error.hpp"
#include "ellfib/poly.hpp"
#include "ellfib/simd.hpp"
#include "support.hpp"

using namespace ellfib;
using ellfib::test::Gen;

namespace {

struct Batch {
  std::vector<double> re, im;
};

Batch random_points(Gen& g, std::size_t n) {
  Batch b;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z = g.complex_box(2.5);
    b.re.push_back(z.real());
    b.im.push_back(z.imag());
  }
  return b;
}

std::vector<cplx> random_coeffs(Gen& g, int degree) {
  std::vector<cplx> c;
  for (int k = 0; k <= degree; ++k) c.push_back(g.complex_box(4.0));
  return c;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("poly_simd") {
  TEST_CASE("trailing zeros are trimmed and the zero polynomial has degree -1") {
    const ComplexPoly p{1.0, 2.0, 0.0, 0.0};
    CHECK(p.degree() == 1);
    CHECK(ComplexPoly{0.0, 0.0}.is_zero());
    CHECK(ComplexPoly{}.degree() == -1);
    CHECK(ComplexPoly{0.0, 0.0, 3.0}.lowest_order() == 2);
  }

  TEST_CASE("arithmetic, derivative and Taylor shift") {
    const ComplexPoly a{1.0, 1.0};   // 1 + u
    const ComplexPoly b{-1.0, 1.0};  // -1 + u
    CHECK(a * b == ComplexPoly{-1.0, 0.0, 1.0});
    CHECK((a + b) == ComplexPoly{0.0, 2.0});
    CHECK((a - a).is_zero());
    CHECK(ComplexPoly{5.0, 3.0, 2.0}.derivative() == ComplexPoly{3.0, 4.0});
    // (u + 1)^2 shifted by -1 is t^2
    const ComplexPoly s = (a * a).shifted(-1.0);
    CHECK(s.degree() == 2);
    CHECK(std::abs(s.coeff(0)) < 1e-15);
    CHECK(std::abs(s.coeff(1)) < 1e-15);
  }

  TEST_CASE("evaluation with derivative matches separate evaluation") {
    Gen g(11);
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexPoly p(random_coeffs(g, 6));
      const cplx z = g.complex_box(2.0);
      cplx v, d;
      p.eval_with_derivative(z, v, d);
      CHECK(v == p(z));
      CHECK(std::abs(d - p.derivative()(z)) <= 1e-12 * (1.0 + std::abs(d)));
    }
  }

  TEST_CASE("scalar kernel matches ComplexPoly evaluation bit for bit") {
    Gen g(12);
    const ComplexPoly p(random_coeffs(g, 5));
    Batch pts = random_points(g, 37);
    std::vector<double> vr(37), vi(37), dr(37), di(37);
    simd::detail::poly_eval_deriv_scalar(p.coeffs(), {pts.re, pts.im}, {vr, vi}, {dr, di});
    for (std::size_t k = 0; k < 37; ++k) {
      cplx v, d;
      p.eval_with_derivative({pts.re[k], pts.im[k]}, v, d);
      CHECK(v.real() == vr[k]);
      CHECK(v.imag() == vi[k]);
      CHECK(d.real() == dr[k]);
      CHECK(d.imag() == di[k]);
    }
  }

  TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
    if (!simd::isa_available(simd::Isa::Avx2)) {
      MESSAGE("AVX2 not available on this CPU/build; equivalence not exercised");
      return;
    }
    Gen g(13);
    for (int degree : {0, 1, 2, 5, 6, 12}) {
      for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 63u, 64u, 1025u}) {
        const auto coeffs = random_coeffs(g, degree);
        Batch pts = random_points(g, n);
        std::vector<double> vr(n), vi(n), dr(n), di(n), rr(n), ri(n);
        std::vector<double> vr2(n), vi2(n), dr2(n), di2(n), rr2(n), ri2(n);
        simd::poly_eval_deriv(coeffs, {pts.re, pts.im}, {vr, vi}, {dr, di}, simd::Isa::Scalar);
        simd::poly_eval_deriv(coeffs, {pts.re, pts.im}, {vr2, vi2}, {dr2, di2}, simd::Isa::Avx2);
        simd::log_derivative(coeffs, {pts.re, pts.im}, {rr, ri}, simd::Isa::Scalar);
        simd::log_derivative(coeffs, {pts.re, pts.im}, {rr2, ri2}, simd::Isa::Avx2);
        CHECK(same_bits(vr, vr2));
        CHECK(same_bits(vi, vi2));
        CHECK(same_bits(dr, dr2));
        CHECK(same_bits(di, di2));
        CHECK(same_bits(rr, rr2));
        CHECK(same_bits(ri, ri2));
      }
    }
  }

  TEST_CASE("log derivative equals p'/p") {
    Gen g(14);
    const ComplexPoly p(random_coeffs(g, 4));
    Batch pts = random_points(g, 20);
    std::vector<double> rr(20), ri(20);
    simd::log_derivative(p.coeffs(), {pts.re, pts.im}, {rr, ri});
    for (std::size_t k = 0; k < 20; ++k) {
      const cplx z(pts.re[k], pts.im[k]);
      const cplx expect = p.derivative()(z) / p(z);
      CHECK(std::abs(cplx(rr[k], ri[k]) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    }
  }

  TEST_CASE("dispatch honours the scalar override") {
    const char* force = std::getenv("ELLFIB_FORCE_SCALAR");
    if (force != nullptr && std::strcmp(force, "1") == 0) CHECK(simd::detected_isa() == simd::Isa::Scalar);
    MESSAGE("dispatched ISA: " << simd::to_string(simd::detected_isa()));
  }

  TEST_CASE("mismatched batch sizes are rejected") {
    std::vector<double> re(4), im(3), out(4);
    const std::vector<cplx> c{1.0};
    CHECK_THROWS_AS(simd::log_derivative(c, {re, im}, {out, out}), Error);
  }
}
