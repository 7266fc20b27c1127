#include "ellfib/curve.hpp"

#include <cmath>

#include "ellfib/error.hpp"

namespace ellfib {

namespace {

// Relative size below which a discriminant coefficient is treated as
// cancellation noise.
constexpr double kChopTolerance = 1e-12;

ComplexPoly abs_coeffs(const ComplexPoly& p) {
  std::vector<cplx> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(std::abs(x), 0.0);
  return ComplexPoly(std::move(c));
}

}  // namespace

cplx discriminant(const WeierstrassCurve& curve) {
  return curve.g2 * curve.g2 * curve.g2 - 27.0 * curve.g3 * curve.g3;
}

double relative_discriminant(const WeierstrassCurve& curve) {
  const double scale = std::pow(std::abs(curve.g2), 3) + 27.0 * std::norm(curve.g3);
  if (scale == 0.0) return 0.0;
  return std::abs(discriminant(curve)) / scale;
}

cplx j_invariant(const WeierstrassCurve& curve) {
  if (relative_discriminant(curve) <= 1e-14)
    throw Error(ErrorCode::SingularCurve, "j-invariant undefined: discriminant vanishes");
  return 1728.0 * curve.g2 * curve.g2 * curve.g2 / discriminant(curve);
}

WeierstrassCurve fiber(const CurveFamily& family, cplx u) { return {family.g2(u), family.g3(u)}; }

ComplexPoly discriminant_poly(const ComplexPoly& g2, const ComplexPoly& g3) {
  const ComplexPoly raw = g2 * g2 * g2 - 27.0 * (g3 * g3);
  const ComplexPoly a2 = abs_coeffs(g2), a3 = abs_coeffs(g3);
  const ComplexPoly scale = a2 * a2 * a2 + 27.0 * (a3 * a3);
  std::vector<cplx> c(raw.coeffs().begin(), raw.coeffs().end());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (std::abs(c[k]) <= kChopTolerance * scale.coeff(k).real()) c[k] = cplx{};
  return ComplexPoly(std::move(c));
}

ComplexPoly discriminant_poly(const CurveFamily& family) {
  ComplexPoly delta = discriminant_poly(family.g2, family.g3);
  if (delta.degree() != family.nf + 2)
    throw Error(ErrorCode::DegreeMismatch,
                "family '" + family.name + "': deg Delta = " + std::to_string(delta.degree()) +
                    ", expected nf + 2 = " + std::to_string(family.nf + 2));
  return delta;
}

void validate_family(const CurveFamily& family) {
  if (family.nf < 0 || family.nf > 4)
    throw Error(ErrorCode::BadNf, "nf must be in 0..4, got " + std::to_string(family.nf));
  if (family.g2.degree() > 2)
    throw Error(ErrorCode::DegreeMismatch, "deg g2 must be <= 2");
  if (family.g3.degree() > 3)
    throw Error(ErrorCode::DegreeMismatch, "deg g3 must be <= 3");
  (void)discriminant_poly(family);
}

ComplexPoly reweight(const ComplexPoly& p, int weight) {
  if (p.degree() > weight)
    throw Error(ErrorCode::InvalidArgument, "reweight: degree exceeds weight");
  std::vector<cplx> out(static_cast<std::size_t>(weight) + 1);
  const auto c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k)
    out[static_cast<std::size_t>(weight) - k] = (k % 2 == 0) ? c[k] : -c[k];
  return ComplexPoly(std::move(out));
}

VChart to_v_chart(const CurveFamily& family) {
  return {reweight(family.g2, 4), reweight(family.g3, 6),
          reweight(discriminant_poly(family.g2, family.g3), 12)};
}

VChart from_v_chart(const VChart& chart) {
  return {reweight(chart.g2, 4), reweight(chart.g3, 6), reweight(chart.delta, 12)};
}

int order_at_infinity(const CurveFamily& family) { return to_v_chart(family).delta.lowest_order(); }

}  // namespace ellfib
