#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ellfib/curve.hpp"

namespace ellfib {

enum class KodairaTag { I, IStar, II, III, IV, IIStar, IIIStar, IVStar };

struct KodairaType {
  KodairaTag tag = KodairaTag::I;
  int n = 0;  // index for I_n and I*_n, unused otherwise

  int euler() const noexcept;
  /// "I_3", "I*_0", "II", "IV*", ...
  std::string label() const;
  /// Inverse of label(); throws InvalidArgument.
  static KodairaType parse(const std::string& label);

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
  friend auto operator<=>(const KodairaType&, const KodairaType&) = default;
};

/// Vanishing order of a polynomial that is identically zero.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

struct FiberLocation {
  cplx u{};
  bool at_infinity = false;

  static FiberLocation finite(cplx u) { return {u, false}; }
  static FiberLocation infinity() { return {cplx{}, true}; }
};

struct FiberReport {
  FiberLocation location;
  KodairaType kodaira;
  int ord_g2 = 0;
  int ord_g3 = 0;
  int ord_delta = 0;
  int euler = 0;
  bool is_surface_singularity = false;
};

struct SurfaceReport {
  std::vector<FiberReport> fibers;  // finite fibers by root order, then infinity
  int total_euler = 0;
  int sign_zbar = 0;
  int sign_z = 0;
};

struct PolynomialRoot {
  cplx root;
  int multiplicity = 1;
};

/// Roots with multiplicity: companion-matrix eigenvalues, Newton polish, then
/// coalescing of numerically multiple roots.  Sorted by (Re, Im).
std::vector<PolynomialRoot> polynomial_roots(const ComplexPoly& p);

/// Roots of the family discriminant.  Throws IdenticallySingular if it vanishes.
std::vector<PolynomialRoot> find_singular_fibers(const CurveFamily& family);

/// Vanishing order of p at u (leading Taylor coefficients negligible against
/// their absolute-value scale).  kInfiniteOrder for the zero polynomial.
int vanishing_order(const ComplexPoly& p, cplx u);

/// Kodaira type from vanishing orders.  Throws NotSingular for ord_delta = 0
/// and NonMinimal for ord_g2 >= 4, ord_g3 >= 6.
KodairaType kodaira_from_orders(int ord_g2, int ord_g3, int ord_delta);

FiberReport classify_fiber(const CurveFamily& family, FiberLocation where);

struct Table1Row {
  KodairaType fiber_at_infinity;
  std::vector<KodairaType> finite_fibers;  // sorted
  std::string constraint_label;
};

/// Known configurations of singular fibers for nf flavours.  Throws BadNf.
std::vector<Table1Row> table1_expected(int nf);

/// Classifies every singular fiber (infinity included) and derives the
/// signatures.  Throws EulerMismatch if the Euler numbers do not add to 12.
SurfaceReport surface_report(const CurveFamily& family);

}  // namespace ellfib
