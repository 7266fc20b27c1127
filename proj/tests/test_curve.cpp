#include <doctest.h>

#include "ellfib/curve.hpp"
#include "ellfib/error.hpp"
#include "support.hpp"

using namespace ellfib;
using ellfib::test::Gen;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ellfib::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("curve") {
  TEST_CASE("discriminant of single fibers") {
    CHECK(discriminant({4.0, 0.0}) == cplx(64.0));
    CHECK(discriminant({0.0, 0.0}) == cplx(0.0));
    CHECK(discriminant({3.0, 1.0}) == cplx(0.0));
  }

  TEST_CASE("j invariant") {
    CHECK(std::abs(j_invariant({4.0, 0.0}) - 1728.0) < 1e-12);
    CHECK(std::abs(j_invariant({0.0, 1.0})) == 0.0);
    CHECK(code_of([] { j_invariant({3.0, 1.0}); }) == ErrorCode::SingularCurve);
  }

  TEST_CASE("discriminant polynomials of small families") {
    CHECK(discriminant_poly(ComplexPoly{0.0, 1.0}, ComplexPoly{}) == ComplexPoly{0.0, 0.0, 0.0, 1.0});
    CHECK(discriminant_poly(ComplexPoly{3.0}, ComplexPoly{0.0, 1.0}) == ComplexPoly{27.0, 0.0, -27.0});
    CHECK(discriminant_poly(ComplexPoly{}, ComplexPoly{0.0, 1.0}) == ComplexPoly{0.0, 0.0, -27.0});

    CurveFamily f{"cube", 0, ComplexPoly{0.0, 1.0}, ComplexPoly{}, {}};
    CHECK(code_of([&] { discriminant_poly(f); }) == ErrorCode::DegreeMismatch);
    f.nf = 1;
    CHECK(discriminant_poly(f).degree() == 3);

    CurveFamily g{"quad", 0, ComplexPoly{3.0}, ComplexPoly{0.0, 1.0}, {}};
    CHECK_NOTHROW(validate_family(g));
  }

  TEST_CASE("validate_family rejects bad data") {
    CurveFamily f{"bad", 5, ComplexPoly{3.0}, ComplexPoly{0.0, 1.0}, {}};
    CHECK(code_of([&] { validate_family(f); }) == ErrorCode::BadNf);
    f.nf = 0;
    f.g2 = ComplexPoly{1.0, 1.0, 1.0, 1.0};
    CHECK(code_of([&] { validate_family(f); }) == ErrorCode::DegreeMismatch);
  }

  TEST_CASE("v-chart examples") {
    // Delta = u^2 + 1 -> v^10 (1 + v^2)
    const ComplexPoly dv = reweight(ComplexPoly{1.0, 0.0, 1.0}, 12);
    CHECK(dv.lowest_order() == 10);
    CHECK(dv == ComplexPoly::monomial(10) + ComplexPoly::monomial(12));
    CHECK(reweight(ComplexPoly{7.0}, 12) == ComplexPoly::monomial(12, 7.0));
    CHECK(reweight(ComplexPoly{4.0}, 4) == ComplexPoly::monomial(4, 4.0));
  }

  TEST_CASE("fixture families satisfy the degree and order-at-infinity rules") {
    for (const char* name : {"nf0", "nf1", "nf2", "nf3", "nf4", "nf3_i2", "isotrivial"}) {
      const CurveFamily f = test::fixture(name);
      CAPTURE(name);
      CHECK_NOTHROW(validate_family(f));
      CHECK(discriminant_poly(f).degree() == f.nf + 2);
      CHECK(order_at_infinity(f) == 10 - f.nf);
    }
  }

  TEST_CASE("property: the chart change is an involution") {
    Gen g(21);
    for (int trial = 0; trial < 40; ++trial) {
      CurveFamily f;
      f.g2 = ComplexPoly{g.complex_box(2), g.complex_box(2), g.complex_box(2)};
      f.g3 = ComplexPoly{g.complex_box(2), g.complex_box(2), g.complex_box(2), g.complex_box(2)};
      const VChart v = to_v_chart(f);
      const VChart back = from_v_chart(v);
      CHECK(back.g2 == f.g2);
      CHECK(back.g3 == f.g3);
      CHECK(back.delta == discriminant_poly(f.g2, f.g3));
    }
  }

  TEST_CASE("property: weight-12 homogeneity and j invariance under rescaling") {
    Gen g(22);
    for (int trial = 0; trial < 100; ++trial) {
      const WeierstrassCurve c = g.smooth_curve();
      cplx s = g.complex_box(2.0);
      if (std::abs(s) < 0.2) s += 0.5;
      const cplx s2 = s * s, s4 = s2 * s2, s6 = s4 * s2, s12 = s6 * s6;
      const WeierstrassCurve cs{s4 * c.g2, s6 * c.g3};
      CHECK(test::rel_err(discriminant(cs), s12 * discriminant(c)) < 1e-12);
      CHECK(std::abs(j_invariant(cs) - j_invariant(c)) <= 1e-12 * std::max(1.0, std::abs(j_invariant(c))));
    }
  }
}
