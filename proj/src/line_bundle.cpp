#include "ellfib/line_bundle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "ellfib/error.hpp"
#include "ellfib/simd.hpp"

namespace ellfib {

namespace {

using std::numbers::pi;

constexpr double kLoopClearance = 1e-6;
constexpr double kIntegerTol = 1e-8;
constexpr double kWindingRejectTol = 1e-6;
constexpr double kPhaseTol = 1e-9;
constexpr int kMaxSamples = 1 << 22;
constexpr int kLedgerSamples = 4096;

struct ContourSums {
  cplx integral_ccw;   // contour integral of Delta'/Delta, counterclockwise
  int arg_turns = 0;   // turns of arg Delta from continuous tracking
};

ContourSums contour_sums(const ComplexPoly& delta, cplx center, double radius, int n) {
  std::vector<double> re(static_cast<std::size_t>(n)), im(re.size());
  std::vector<double> rr(re.size()), ri(re.size()), vr(re.size()), vi(re.size()), dr(re.size()),
      di(re.size());
  for (int k = 0; k < n; ++k) {
    const cplx z = center + std::polar(radius, 2.0 * pi * k / n);
    re[static_cast<std::size_t>(k)] = z.real();
    im[static_cast<std::size_t>(k)] = z.imag();
  }
  const simd::PointsSoA pts{re, im};
  simd::log_derivative(delta.coeffs(), pts, {rr, ri});
  simd::poly_eval_deriv(delta.coeffs(), pts, {vr, vi}, {dr, di});

  ContourSums s;
  cplx acc{};
  double turns = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const auto j = static_cast<std::size_t>((k + 1) % n);
    acc += cplx(rr[i], ri[i]) * std::polar(1.0, 2.0 * pi * k / n);
    turns += std::arg(cplx(vr[j], vi[j]) / cplx(vr[i], vi[i]));
  }
  // dz = i r e^{i theta} dtheta, dtheta = 2 pi / n
  s.integral_ccw = acc * cplx(0.0, 2.0 * pi * radius / n);
  s.arg_turns = static_cast<int>(std::lround(turns / (2.0 * pi)));
  return s;
}

double numeric_winding(const ComplexPoly& delta, cplx center, double radius, int n) {
  return (contour_sums(delta, center, radius, n).integral_ccw / cplx(0.0, 2.0 * pi)).real();
}

Rational reduce_mod4(Rational eta) {
  while (eta > 0) eta -= 4;
  while (eta <= -4) eta += 4;
  return eta;
}

void check_loop(const LoopSpec& loop, const ComplexPoly& delta) {
  if (!(loop.radius > 0.0) || !std::isfinite(loop.radius))
    throw Error(ErrorCode::InvalidArgument, "loop radius must be positive");
  if (loop.samples < 64) throw Error(ErrorCode::InvalidArgument, "loop needs at least 64 samples");
  if (delta.degree() < 1) return;
  for (const auto& r : polynomial_roots(delta)) {
    const double gap = std::abs(std::abs(r.root - loop.center) - loop.radius);
    if (gap < kLoopClearance)
      throw Error(ErrorCode::LoopTooCloseToSingularity,
                  "loop passes within " + std::to_string(gap) + " of a discriminant zero");
  }
}

double node_clearance(const std::vector<PolynomialRoot>& roots, cplx at) {
  double d = INFINITY;
  for (const auto& r : roots)
    if (std::abs(r.root - at) > 0.0) d = std::min(d, std::abs(r.root - at));
  return d;
}

}  // namespace

std::string_view to_string(BundleOperator op) {
  return op == BundleOperator::Dbar ? "dbar" : "signature";
}
std::string_view to_string(Orientation o) {
  return o == Orientation::Clockwise ? "cw" : "ccw";
}
std::string_view to_string(Chart c) { return c == Chart::U ? "u" : "v"; }

Rational connection_coefficient(BundleOperator op) {
  return op == BundleOperator::Dbar ? Rational(1, 12) : Rational(1, 6);
}

cplx connection_form(BundleOperator op, const ComplexPoly& delta, cplx u) {
  cplx v, d;
  delta.eval_with_derivative(u, v, d);
  if (std::abs(v) <= 1e-14 * delta.l1_norm() * std::pow(1.0 + std::abs(u), delta.degree()))
    throw Error(ErrorCode::SingularFiber, "connection form is singular at a discriminant zero");
  const Rational c = connection_coefficient(op);
  return static_cast<double>(c.numerator()) / static_cast<double>(c.denominator()) * d / v;
}

cplx connection_form(BundleOperator op, const CurveFamily& family, cplx u) {
  return connection_form(op, discriminant_poly(family.g2, family.g3), u);
}

ComplexPoly chart_discriminant(const CurveFamily& family, Chart chart) {
  return chart == Chart::U ? discriminant_poly(family.g2, family.g3) : to_v_chart(family).delta;
}

cplx phase_of(const Rational& eta) {
  const Rational r = reduce_mod4(eta);
  const double x = static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
  return std::polar(1.0, -0.5 * pi * x);
}

HolonomyResult holonomy(BundleOperator op, const CurveFamily& family, const LoopSpec& loop) {
  const ComplexPoly delta = chart_discriminant(family, loop.chart);
  if (delta.is_zero()) throw Error(ErrorCode::IdenticallySingular, "discriminant vanishes identically");
  check_loop(loop, delta);

  HolonomyResult h;
  h.loop = loop;
  h.op = op;
  ContourSums sums;
  double w_ccw = 0.0;
  for (int n = loop.samples;; n *= 2) {
    sums = contour_sums(delta, loop.center, loop.radius, n);
    w_ccw = (sums.integral_ccw / cplx(0.0, 2.0 * pi)).real();
    h.samples_used = n;
    const bool settled = std::abs(w_ccw - std::round(w_ccw)) <= kIntegerTol &&
                         std::lround(w_ccw) == sums.arg_turns;
    if (settled || 2 * n > kMaxSamples) break;
  }
  if (std::abs(w_ccw - std::round(w_ccw)) > kWindingRejectTol)
    throw Error(ErrorCode::NonIntegerWinding,
                "winding " + std::to_string(w_ccw) + " is not an integer");

  const int sign = loop.orientation == Orientation::Counterclockwise ? 1 : -1;
  h.winding = sign * static_cast<int>(std::lround(w_ccw));
  h.winding_numeric = sign * w_ccw;

  const Rational c = connection_coefficient(op);
  const cplx integral = static_cast<double>(sign) * sums.integral_ccw;
  h.phase = std::exp(-static_cast<double>(c.numerator()) / static_cast<double>(c.denominator()) *
                     integral);
  h.log_monodromy = op == BundleOperator::Signature ? Rational(2 * h.winding, 3)
                                                    : reduce_mod4(Rational(h.winding, 3));
  if (std::abs(h.phase - phase_of(h.log_monodromy)) > kPhaseTol)
    throw Error(ErrorCode::ConvergenceFailure, "numeric holonomy phase disagrees with exact value");
  return h;
}

bool canonical_trivialization_check(const CurveFamily& family, const LoopSpec& loop) {
  const Rational six_eta = Rational(6) * holonomy(BundleOperator::Signature, family, loop).log_monodromy;
  return six_eta.denominator() == 1 && six_eta.numerator() % 4 == 0;
}

LoopSpec node_loop(const CurveFamily& family, cplx node) {
  const auto roots = find_singular_fibers(family);
  LoopSpec l;
  l.center = node;
  l.radius = std::min(1.0, node_clearance(roots, node) / 3.0);
  l.orientation = Orientation::Clockwise;
  l.chart = Chart::U;
  return l;
}

LoopSpec infinity_loop(const CurveFamily& family) {
  double nearest = INFINITY;
  for (const auto& r : find_singular_fibers(family))
    if (std::abs(r.root) > 0.0) nearest = std::min(nearest, 1.0 / std::abs(r.root));
  LoopSpec l;
  l.center = 0.0;
  l.radius = std::min(1.0, nearest / 3.0);
  l.orientation = Orientation::Clockwise;
  l.chart = Chart::V;
  return l;
}

CurvatureLedger curvature_ledger(const CurveFamily& family, BundleOperator op) {
  const SurfaceReport report = surface_report(family);
  const Rational c = connection_coefficient(op);
  const double cd = static_cast<double>(c.numerator()) / static_cast<double>(c.denominator());

  CurvatureLedger ledger;
  ledger.op = op;
  for (const auto& f : report.fibers) {
    ResidueEntry e;
    e.location = f.location;
    e.order = f.ord_delta;
    e.exact = c * Rational(f.ord_delta);
    const LoopSpec loop = f.location.at_infinity ? infinity_loop(family) : node_loop(family, f.location.u);
    e.numeric = cd * numeric_winding(chart_discriminant(family, loop.chart), loop.center, loop.radius,
                                     kLedgerSamples);
    const double exact = static_cast<double>(e.exact.numerator()) /
                         static_cast<double>(e.exact.denominator());
    ledger.max_residue_error = std::max(ledger.max_residue_error, std::abs(e.numeric - exact));
    ledger.total += e.exact;
    ledger.residues.push_back(e);
  }
  return ledger;
}

int signature_from_monodromy(const CurveFamily& family) {
  Rational sum;
  for (const auto& r : find_singular_fibers(family))
    sum += holonomy(BundleOperator::Signature, family, node_loop(family, r.root)).log_monodromy;
  const Rational eta_inf =
      holonomy(BundleOperator::Signature, family, infinity_loop(family)).log_monodromy;
  const Rational s = sum - eta_inf / 2 - 2;
  if (s.denominator() != 1)
    throw Error(ErrorCode::EulerMismatch, "signature from monodromy is not an integer");
  const int value = static_cast<int>(s.numerator());
  const int expected = surface_report(family).sign_z;
  if (value != expected)
    throw Error(ErrorCode::EulerMismatch, "signature from monodromy " + std::to_string(value) +
                                              " differs from Euler count " +
                                              std::to_string(expected));
  return value;
}

}  // namespace ellfib
