#pragma once

#include <boost/rational.hpp>
#include <string_view>
#include <vector>

#include "ellfib/curve.hpp"
#include "ellfib/kodaira.hpp"

namespace ellfib {

using Rational = boost::rational<long long>;

enum class BundleOperator { Dbar, Signature };
enum class Orientation { Clockwise, Counterclockwise };
enum class Chart { U, V };

std::string_view to_string(BundleOperator op);
std::string_view to_string(Orientation o);
std::string_view to_string(Chart c);

/// Circle |z - center| = radius in the given chart (z = u or z = v = -1/u).
struct LoopSpec {
  cplx center{};
  double radius = 1.0;
  int samples = 1024;
  Orientation orientation = Orientation::Counterclockwise;
  Chart chart = Chart::U;
};

/// Parallel transport of the determinant line around a loop.
///
/// `winding` counts the turns of Delta (in the loop's chart) as the loop is
/// traversed, so a clockwise circle around a simple node has winding -1.
/// The logarithmic monodromy eta satisfies phase = exp(-i pi/2 eta):
/// eta = (2/3) winding for the signature operator, and eta = winding / 3
/// reduced mod 4 into (-4, 0] for dbar.
struct HolonomyResult {
  LoopSpec loop;
  BundleOperator op = BundleOperator::Dbar;
  int winding = 0;
  double winding_numeric = 0.0;
  Rational log_monodromy;
  cplx phase{1.0, 0.0};
  int samples_used = 0;
};

/// Coefficient c of the connection form c Delta'/Delta du: 1/12 (dbar) or 1/6.
Rational connection_coefficient(BundleOperator op);

/// c Delta'(u)/Delta(u).  Throws SingularFiber at a discriminant zero.
cplx connection_form(BundleOperator op, const ComplexPoly& delta, cplx u);
cplx connection_form(BundleOperator op, const CurveFamily& family, cplx u);

/// Discriminant in the loop's chart.
ComplexPoly chart_discriminant(const CurveFamily& family, Chart chart);

HolonomyResult holonomy(BundleOperator op, const CurveFamily& family, const LoopSpec& loop);

/// Exact value exp(-i pi/2 eta).
cplx phase_of(const Rational& eta);

/// True iff the sixth tensor power of the signature line has trivial
/// monodromy around the loop: 6 eta is a multiple of 4.
bool canonical_trivialization_check(const CurveFamily& family, const LoopSpec& loop);

/// Clockwise circle around a finite singular fiber, radius a third of the
/// distance to the nearest other discriminant zero (at most 1).
LoopSpec node_loop(const CurveFamily& family, cplx node);
/// Clockwise circle around v = 0 in the v-chart, clear of every finite node.
LoopSpec infinity_loop(const CurveFamily& family);

struct ResidueEntry {
  FiberLocation location;
  int order = 0;     // vanishing order of Delta (in the local chart)
  Rational exact;    // c * order
  double numeric = 0.0;  // (1 / 2 pi i) contour integral of c Delta'/Delta, counterclockwise
};

struct CurvatureLedger {
  BundleOperator op = BundleOperator::Signature;
  std::vector<ResidueEntry> residues;  // finite fibers, then infinity
  Rational total;
  double max_residue_error = 0.0;
};

CurvatureLedger curvature_ledger(const CurveFamily& family,
                                 BundleOperator op = BundleOperator::Signature);

/// sum_n eta[gamma_n] - eta[gamma_inf] / 2 - 2 from the signature
/// holonomies.  Throws EulerMismatch if the sum is not an integer or differs
/// from surface_report(family).sign_z.
int signature_from_monodromy(const CurveFamily& family);

}  // namespace ellfib
