#include "ellfib/uplane.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ellfib/error.hpp"
#include "ellfib/kodaira.hpp"
#include "ellfib/spectral.hpp"

namespace ellfib {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kStencilClearance = 4.0;
constexpr double kIsotrivialTol = 1e-10;

double node_distance(const CurveFamily& family, cplx u) {
  double d = INFINITY;
  for (const auto& r : find_singular_fibers(family)) d = std::min(d, std::abs(u - r.root));
  return d;
}

// Periods at u, refusing stencils of radius h that come near a node.
Periods checked_center(const CurveFamily& family, cplx u, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw Error(ErrorCode::InvalidArgument, "step must be positive and finite");
  const Periods p = periods_along_family(family, u);
  const double d = node_distance(family, u);
  if (d < kStencilClearance * h)
    throw Error(ErrorCode::StencilCrossesSingularity,
                "stencil of radius " + std::to_string(h) + " within " + std::to_string(d) +
                    " of a discriminant zero");
  return p;
}

double f1_of(const Periods& p) { return -0.5 * std::log(det_prime_laplacian(p)); }

double resolve(double h, double fallback) { return h > 0.0 ? h : fallback; }

}  // namespace

double default_tau_step(cplx u) { return 1e-4 * (1.0 + std::abs(u)); }
double default_laplacian_step(cplx u) { return 1e-3 * (1.0 + std::abs(u)); }

UPlanePoint uplane_point(const CurveFamily& family, cplx u, double h) {
  h = resolve(h, default_tau_step(u));
  UPlanePoint pt;
  pt.u = u;
  pt.periods = checked_center(family, u, h);
  auto tau_at = [&](cplx du) { return periods_along_family(family, u + du, pt.periods).tau; };
  const cplx t0 = pt.periods.tau;
  const cplx tp = tau_at(h), tm = tau_at(-h);
  const cplx tp2 = tau_at(0.5 * h), tm2 = tau_at(-0.5 * h);

  pt.d_tau_du_coarse = (tp - tm) / (2.0 * h);
  pt.d_tau_du_fine = (tp2 - tm2) / h;
  pt.d_tau_du = (4.0 * pt.d_tau_du_fine - pt.d_tau_du_coarse) / 3.0;

  const cplx s_coarse = (tp - 2.0 * t0 + tm) / (h * h);
  const cplx s_fine = (tp2 - 2.0 * t0 + tm2) / (0.25 * h * h);
  pt.d2_tau_du2 = (4.0 * s_fine - s_coarse) / 3.0;
  return pt;
}

double kaehler_coefficient(const CurveFamily& family, cplx u) {
  const Periods p = periods_along_family(family, u);
  return 8.0 * p.tau.imag() * std::norm(p.omega);
}

double scalar_curvature(const CurveFamily& family, cplx u, double h) {
  const UPlanePoint pt = uplane_point(family, u, h);
  const double im = pt.periods.tau.imag();
  return std::norm(pt.d_tau_du / pt.periods.omega) / (8.0 * im * im * im);
}

double f1(const CurveFamily& family, cplx u) { return f1_of(periods_along_family(family, u)); }

KaehlerData kaehler_data(const CurveFamily& family, cplx u, double h) {
  const UPlanePoint pt = uplane_point(family, u, h);
  const double im = pt.periods.tau.imag();
  KaehlerData k;
  k.omega_form_coeff = 8.0 * im * std::norm(pt.periods.omega);
  k.scalar_curvature = std::norm(pt.d_tau_du / pt.periods.omega) / (8.0 * im * im * im);
  k.f1 = f1_of(pt.periods);
  return k;
}

double anomaly_lhs(const CurveFamily& family, cplx u, double h) {
  h = resolve(h, default_laplacian_step(u));
  const Periods p0 = checked_center(family, u, h);
  const double f0 = f1_of(p0);
  auto laplacian = [&](double s) {
    double acc = 0.0;
    for (const cplx d : {cplx(s, 0.0), cplx(-s, 0.0), kI * s, -kI * s})
      acc += f1_of(periods_along_family(family, u + d, p0));
    return (acc - 4.0 * f0) / (s * s);
  };
  const double lap = (4.0 * laplacian(0.5 * h) - laplacian(h)) / 3.0;
  return 0.25 * lap / (p0.tau.imag() * std::norm(p0.omega));
}

AnomalyCheck anomaly_check(const CurveFamily& family, cplx u, double h) {
  AnomalyCheck a;
  a.lhs = anomaly_lhs(family, u, h);
  a.rhs = is_isotrivial(family) ? 0.0 : scalar_curvature(family, u, h > 0.0 ? 0.1 * h : 0.0);
  if (!(a.rhs >= 1e-300))
    throw Error(ErrorCode::DivisionByZero,
                "scalar curvature vanishes (lhs = " + std::to_string(a.lhs) + ")");
  a.ratio = a.lhs / a.rhs;
  return a;
}

cplx dj_du(const CurveFamily& family, cplx u) {
  cplx g2, dg2, g3, dg3;
  family.g2.eval_with_derivative(u, g2, dg2);
  family.g3.eval_with_derivative(u, g3, dg3);
  const cplx delta = g2 * g2 * g2 - 27.0 * g3 * g3;
  const cplx ddelta = 3.0 * g2 * g2 * dg2 - 54.0 * g3 * dg3;
  if (delta == cplx{}) throw Error(ErrorCode::SingularFiber, "dj/du at a node");
  return 1728.0 * g2 * g2 * (3.0 * dg2 * delta - g2 * ddelta) / (delta * delta);
}

bool is_isotrivial(const CurveFamily& family) {
  double radius = 1.0;
  for (const auto& r : find_singular_fibers(family)) radius = std::max(radius, 1.0 + std::abs(r.root));
  for (int k = 0; k < 5; ++k) {
    const cplx u = 1.5 * radius * std::exp(kI * (2.0 * std::numbers::pi * k / 5.0 + 0.3));
    const WeierstrassCurve c = fiber(family, u);
    const double j = std::abs(1728.0 * c.g2 * c.g2 * c.g2 / discriminant(c));
    if (!(std::abs(dj_du(family, u)) < kIsotrivialTol * (1.0 + j))) return false;
  }
  return true;
}

}  // namespace ellfib
