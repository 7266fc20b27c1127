#pragma once

#include <string>
#include <vector>

#include "ellfib/poly.hpp"

namespace ellfib {

/// Single fiber y^2 = 4x^3 - g2 x - g3.
struct WeierstrassCurve {
  cplx g2;
  cplx g3;
};

/// g2^3 - 27 g3^2.
cplx discriminant(const WeierstrassCurve& curve);

/// Relative size of the discriminant against the magnitude of the two
/// terms that cancel in it; small values mean the cubic is (nearly) singular.
double relative_discriminant(const WeierstrassCurve& curve);

/// 1728 g2^3 / Delta.  Throws SingularCurve when Delta vanishes.
cplx j_invariant(const WeierstrassCurve& curve);

/// A Weierstrass family over the u-plane: g2(u), g3(u) with deg <= 2, 3.
struct CurveFamily {
  std::string name;
  int nf = 0;
  ComplexPoly g2;
  ComplexPoly g3;
  std::vector<cplx> masses;  // metadata only
};

WeierstrassCurve fiber(const CurveFamily& family, cplx u);

/// Coefficient-level g2^3 - 27 g3^2 with cancellation noise chopped.  No
/// degree check.
ComplexPoly discriminant_poly(const ComplexPoly& g2, const ComplexPoly& g3);

/// Discriminant of the family; throws DegreeMismatch unless deg = nf + 2.
ComplexPoly discriminant_poly(const CurveFamily& family);

/// Checks nf range, deg g2 <= 2, deg g3 <= 3 and the discriminant degree.
void validate_family(const CurveFamily& family);

/// Family data in the chart v at u = infinity, with u = -1/v.
struct VChart {
  ComplexPoly g2;     // v^4  g2(-1/v)
  ComplexPoly g3;     // v^6  g3(-1/v)
  ComplexPoly delta;  // v^12 Delta(-1/v)
};

/// p(t) -> t^weight p(-1/t).  An involution for even weights.
ComplexPoly reweight(const ComplexPoly& p, int weight);

VChart to_v_chart(const CurveFamily& family);
/// Same substitution in the other direction (v = -1/u); returns u-chart data.
VChart from_v_chart(const VChart& chart);

/// ord_{v=0} Delta_v; 10 - nf for valid families.
int order_at_infinity(const CurveFamily& family);

}  // namespace ellfib
