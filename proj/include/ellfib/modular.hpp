#pragma once

#include <array>

#include "ellfib/poly.hpp"

namespace ellfib {

/// Periodicity twist (nu1, nu2) of fiber eigenfunctions.  (1,1) is the odd
/// structure carrying the zero mode; the other three are even.
struct SpinStructure {
  int nu1 = 0;
  int nu2 = 0;

  SpinStructure() = default;
  SpinStructure(int n1, int n2);

  bool is_odd() const noexcept { return nu1 == 1 && nu2 == 1; }
  friend bool operator==(const SpinStructure&, const SpinStructure&) = default;
};

inline constexpr std::array<std::array<int, 2>, 3> kEvenSpinStructures{{{0, 0}, {0, 1}, {1, 0}}};

/// A point of the upper half plane together with its nome q = exp(2 pi i tau).
struct TauPoint {
  cplx tau;
  cplx q;

  static TauPoint from_tau(cplx tau);
};

/// tau' = (a tau + b) / (c tau + d) in the standard fundamental domain
/// (|Re tau'| <= 1/2, |tau'| >= 1).
struct ModularReduction {
  cplx tau;
  long long a = 1, b = 0, c = 0, d = 1;
};

ModularReduction reduce_tau(cplx tau);

/// Dedekind eta.  Points with Im tau < 0.5 are mapped upward with the full
/// multiplier system (T: e^{i pi/12}, S: sqrt(-i tau)) before the product is
/// summed.
cplx dedekind_eta(const TauPoint& tau);
cplx dedekind_eta(cplx tau);
/// A logarithm of eta (real part exact; imaginary part defined mod 2 pi).
/// Safe for large Im tau where eta itself underflows.
cplx log_dedekind_eta(cplx tau);

/// Jacobi theta with characteristics, symmetric truncation of the n-sum.
cplx theta_ab(int a, int b, cplx v, const TauPoint& tau);

/// Normalized Eisenstein series E4, E6 (constant term 1), evaluated after
/// reduction with the weight factor (c tau + d)^k.
cplx eisenstein_e4(cplx tau);
cplx eisenstein_e6(cplx tau);

/// Klein j(tau) = 1728 E4^3 / (E4^3 - E6^2).
cplx j_of_tau(cplx tau);

/// (2 pi)^12 eta(tau)^24 / (2 omega)^12, the discriminant of the lattice
/// spanned by the full periods 2 omega, 2 omega tau.
cplx modular_discriminant(cplx tau, cplx omega);

/// Eigenvalue of 2 dbar on the (n1, n2) mode of structure nu, for the
/// torus with half-periods omega, omega tau.
cplx eigenvalue_2dbar(long n1, long n2, const SpinStructure& nu, cplx tau, cplx omega);

/// Output of the lattice-zeta continuation.
struct EpsteinZeta {
  double zeta0 = 0.0;        // zeta(0), from the structure of the continuation
  double zeta_prime0 = 0.0;  // zeta'(0)
  double logdet = 0.0;       // -zeta'(0) + ln(pi / (Im tau |omega|))^2 zeta(0)
  double tail_bound = 0.0;   // bound on the truncated tails of both theta sums
  long terms = 0;            // lattice points summed
};

/// ln det(-4 d dbar) for structure nu, computed from the shifted-lattice
/// zeta function by the theta-transform (incomplete gamma) split, without
/// using any closed form in eta or theta.  Throws ConvergenceFailure when
/// the tail bound exceeds 1e-10.
EpsteinZeta epstein_zeta_continuation(const SpinStructure& nu, const TauPoint& tau, cplx omega);
double epstein_zeta_logdet(const SpinStructure& nu, const TauPoint& tau, cplx omega);

/// zeta_nu(s) for real s in (0, 1) through the same continuation.
double epstein_zeta(const SpinStructure& nu, const TauPoint& tau, double s);

/// zeta_nu(0) extrapolated from epstein_zeta at small positive s; an
/// independent numerical check of the values 0 (even) and -1 (odd).
double epstein_zeta_at_zero_numeric(const SpinStructure& nu, const TauPoint& tau);

}  // namespace ellfib
