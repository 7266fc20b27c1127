#include "ellfib/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ellfib/error.hpp"
#include "ellfib/modular.hpp"

namespace ellfib {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

constexpr double kCoincidentRoots = 1e-10;
constexpr double kDiscriminantTol = 1e-9;
constexpr double kJTol = 1e-7;
constexpr double kInvariantTol = 1e-9;

cplx newton_polish(cplx x, const WeierstrassCurve& c) {
  for (int it = 0; it < 3; ++it) {
    const cplx f = 4.0 * x * x * x - c.g2 * x - c.g3;
    const cplx df = 12.0 * x * x - c.g2;
    if (df == cplx{}) break;
    const cplx step = f / df;
    if (!std::isfinite(std::abs(step))) break;
    x -= step;
  }
  return x;
}

cplx agm(cplx a, cplx b) {
  for (int it = 0; it < 100; ++it) {
    const cplx a1 = 0.5 * (a + b);
    cplx b1 = std::sqrt(a * b);
    if (std::abs(a1 - b1) > std::abs(a1 + b1)) b1 = -b1;
    a = a1;
    b = b1;
    if (std::abs(a - b) <= 1e-16 * std::abs(a)) break;
  }
  return 0.5 * (a + b);
}

Periods from_full_periods(cplx w1, cplx w2) {
  Periods p;
  p.omega = 0.5 * w1;
  p.omega_prime = 0.5 * w2;
  p.tau = w2 / w1;
  if (p.tau.imag() < 0.0) {
    p.omega_prime = -p.omega_prime;
    p.tau = -p.tau;
  }
  p.q = std::exp(2.0 * pi * kI * p.tau);
  return p;
}

Periods agm_periods(cplx e1, cplx e2, cplx e3) {
  const cplx a = std::sqrt(e1 - e3);
  cplx b = std::sqrt(e1 - e2);
  cplx c = std::sqrt(e2 - e3);
  if (std::abs(a - b) > std::abs(a + b)) b = -b;
  if (std::abs(a - c) > std::abs(a + c)) c = -c;
  return from_full_periods(pi / agm(a, b), kI * pi / agm(a, c));
}

}  // namespace

CubicRoots cubic_roots(const WeierstrassCurve& curve) {
  // x^3 + p x + q with p = -g2/4, q = -g3/4 (Cardano, larger cube root).
  const cplx p = -curve.g2 / 4.0, q = -curve.g3 / 4.0;
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx u3 = -q / 2.0 + disc;
  const cplx alt = -q / 2.0 - disc;
  if (std::abs(alt) > std::abs(u3)) u3 = alt;
  CubicRoots out;
  const cplx zeta = std::polar(1.0, 2.0 * pi / 3.0);
  if (u3 == cplx{}) {
    out.roots = {cplx{}, cplx{}, cplx{}};
  } else {
    cplx u = std::pow(u3, 1.0 / 3.0);
    for (auto& r : out.roots) {
      r = newton_polish(u - p / (3.0 * u), curve);
      u *= zeta;
    }
  }
  double scale = 1.0;
  for (const auto& r : out.roots) scale = std::max(scale, 1.0 + std::abs(r));
  const double tie = 1e-12 * scale;
  std::sort(out.roots.begin(), out.roots.end(), [tie](cplx x, cplx y) {
    if (std::abs(x.real() - y.real()) > tie) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  out.min_separation = std::min({std::abs(out.roots[0] - out.roots[1]),
                                 std::abs(out.roots[0] - out.roots[2]),
                                 std::abs(out.roots[1] - out.roots[2])});
  out.coincident = out.min_separation < kCoincidentRoots * scale || relative_discriminant(curve) <= 1e-14;
  return out;
}

bool PeriodCheck::ok() const noexcept {
  return discriminant_rel_err <= kDiscriminantTol && j_err <= kJTol && g2_err <= kInvariantTol &&
         g3_err <= kInvariantTol;
}

PeriodCheck check_periods(const WeierstrassCurve& curve, const Periods& p) {
  PeriodCheck out;
  const cplx delta = discriminant(curve);
  out.discriminant_rel_err = std::abs(modular_discriminant(p.tau, p.omega) / delta - 1.0);

  const cplx j_curve = j_invariant(curve);
  out.j_err = std::abs(j_curve - j_of_tau(p.tau)) / std::max(1.0, std::abs(j_curve));

  // g2 = (4 pi^4 / 3) E4 / (2 omega)^4,  g3 = (8 pi^6 / 27) E6 / (2 omega)^6
  const cplx w = 2.0 * p.omega;
  const cplx g2 = 4.0 * std::pow(pi, 4) / 3.0 * eisenstein_e4(p.tau) / std::pow(w, 4);
  const cplx g3 = 8.0 * std::pow(pi, 6) / 27.0 * eisenstein_e6(p.tau) / std::pow(w, 6);
  // Weighted scale so the check is homogeneous under (g2, g3) -> (s^4 g2, s^6 g3).
  const double s = std::max(std::pow(std::abs(curve.g2), 0.25), std::pow(std::abs(curve.g3), 1.0 / 6.0));
  out.g2_err = std::abs(g2 - curve.g2) / std::pow(s, 4);
  out.g3_err = std::abs(g3 - curve.g3) / std::pow(s, 6);
  return out;
}

Periods compute_periods(const WeierstrassCurve& curve) {
  const CubicRoots roots = cubic_roots(curve);
  if (roots.coincident || relative_discriminant(curve) <= 1e-14)
    throw Error(ErrorCode::SingularCurve, "cubic has a repeated root");
  const auto& r = roots.roots;
  // Canonical labelling first (e1 > e2 > e3 lexicographically), then the rest.
  static constexpr int kOrders[6][3] = {{2, 1, 0}, {2, 0, 1}, {1, 2, 0},
                                        {1, 0, 2}, {0, 2, 1}, {0, 1, 2}};
  for (const auto& o : kOrders) {
    const Periods p = agm_periods(r[o[0]], r[o[1]], r[o[2]]);
    if (!(p.tau.imag() > 0.0) || !std::isfinite(std::abs(p.omega))) continue;
    if (check_periods(curve, p).ok()) return p;
  }
  throw Error(ErrorCode::AgmBranchFailure, "no root labelling reproduces the discriminant");
}

Periods align_to(const Periods& p, const Periods& seed) {
  const double det = p.omega.real() * p.omega_prime.imag() - p.omega_prime.real() * p.omega.imag();
  if (det == 0.0) return p;
  auto coords = [&](cplx s, double& x, double& y) {
    x = (s.real() * p.omega_prime.imag() - p.omega_prime.real() * s.imag()) / det;
    y = (p.omega.real() * s.imag() - p.omega.imag() * s.real()) / det;
  };
  double x0, y0, x1, y1;
  coords(seed.omega, x0, y0);
  coords(seed.omega_prime, x1, y1);
  const double d = std::round(x0), c = std::round(y0), b = std::round(x1), a = std::round(y1);
  const double resid = std::max({std::abs(x0 - d), std::abs(y0 - c), std::abs(x1 - b), std::abs(y1 - a)});
  if (resid > 0.25 || a * d - b * c != 1.0) return p;
  Periods out;
  out.omega = d * p.omega + c * p.omega_prime;
  out.omega_prime = b * p.omega + a * p.omega_prime;
  out.tau = out.omega_prime / out.omega;
  out.q = std::exp(2.0 * pi * kI * out.tau);
  return out;
}

Periods periods_along_family(const CurveFamily& family, cplx u, const std::optional<Periods>& seed) {
  const WeierstrassCurve curve = fiber(family, u);
  Periods p;
  try {
    p = compute_periods(curve);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularCurve)
      throw Error(ErrorCode::SingularFiber, "fiber over u is singular");
    throw;
  }
  return seed ? align_to(p, *seed) : p;
}

}  // namespace ellfib
