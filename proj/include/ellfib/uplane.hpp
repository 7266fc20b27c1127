#pragma once

#include "ellfib/curve.hpp"
#include "ellfib/periods.hpp"

namespace ellfib {

/// Ratio Delta_UP F1 / S.  Differentiating F1 = -ln vol - (1/12) ln|Delta|^2
/// + const with ln|Delta| and ln|omega| harmonic gives
/// d_u d_ubar F1 = |tau_u|^2 / (4 Im^2 tau); dividing by Im tau |omega|^2 and
/// by S = |tau_u / omega|^2 / (8 Im^3 tau) leaves 2.
inline constexpr double kAnomalyRatio = 2.0;

/// tau(u) near a smooth fiber, with derivatives along the holomorphic
/// continuation of the period basis.
struct UPlanePoint {
  cplx u;
  Periods periods;
  cplx d_tau_du;    // Richardson-extrapolated central difference
  cplx d2_tau_du2;  // likewise
  cplx d_tau_du_coarse;  // raw central difference at step h
  cplx d_tau_du_fine;    // raw central difference at step h/2
};

struct KaehlerData {
  double omega_form_coeff = 0.0;  // coefficient of i du ^ du-bar
  double scalar_curvature = 0.0;
  double f1 = 0.0;
};

/// Step used when h <= 0 is passed: 1e-4 (1 + |u|).
double default_tau_step(cplx u);
/// Step for the Laplacian of F1 when h <= 0 is passed: 1e-3 (1 + |u|).
double default_laplacian_step(cplx u);

/// Throws SingularFiber at a node and StencilCrossesSingularity if a
/// discriminant zero lies within twice the stencil radius.
UPlanePoint uplane_point(const CurveFamily& family, cplx u, double h = 0.0);

/// 8 Im tau |omega|^2.
double kaehler_coefficient(const CurveFamily& family, cplx u);

/// |tau_u / omega|^2 / (8 Im^3 tau).
double scalar_curvature(const CurveFamily& family, cplx u, double h = 0.0);

/// -1/2 ln det' of the fiber Laplacian.
double f1(const CurveFamily& family, cplx u);

KaehlerData kaehler_data(const CurveFamily& family, cplx u, double h = 0.0);

/// (1 / (Im tau |omega|^2)) d_u d_ubar F1, from the five-point Laplacian at
/// h and h/2 with one Richardson step.
double anomaly_lhs(const CurveFamily& family, cplx u, double h = 0.0);

struct AnomalyCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

/// lhs as above, rhs = scalar_curvature.  Throws DivisionByZero when
/// rhs < 1e-300, which includes every isotrivial family (rhs taken as 0).
AnomalyCheck anomaly_check(const CurveFamily& family, cplx u, double h = 0.0);

/// dj/du at u from the polynomial data, exact up to rounding.
cplx dj_du(const CurveFamily& family, cplx u);

/// |dj/du| < 1e-10 (1 + |j|) at five fixed probe points off the nodes.
bool is_isotrivial(const CurveFamily& family);

}  // namespace ellfib
