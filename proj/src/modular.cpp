#include "ellfib/modular.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "compensated_sum.hpp"
#include "ellfib/error.hpp"

namespace ellfib {

namespace {

using std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Series truncation: stop once a term drops below this, hard cap on terms.
constexpr double kSeriesEps = 1e-17;
constexpr int kMaxTerms = 10000;

// eta is summed directly only for Im tau at least this large.
constexpr double kEtaDirectImTau = 0.5;

// pi |z|^2 cutoff for the two Epstein theta sums; E1(42) ~ 1e-20.
constexpr double kEpsteinCutoff = 42.0;
constexpr double kEpsteinMaxTail = 1e-10;
constexpr long kEpsteinMaxPoints = 20'000'000;

void require_upper_half_plane(cplx tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()))
    throw Error(ErrorCode::InvalidArgument, "tau must lie in the upper half plane");
}

// log of prod (1 - q^n), direct.
cplx log_euler_product(cplx q) {
  cplx acc{};
  cplx qn = q;
  for (int n = 1; n <= kMaxTerms; ++n) {
    if (std::abs(qn) < kSeriesEps) break;
    acc += std::log(1.0 - qn);
    qn *= q;
  }
  return acc;
}

cplx log_eta_impl(cplx tau, int depth) {
  if (depth > 64) throw Error(ErrorCode::ConvergenceFailure, "eta reduction did not terminate");
  const double shift = std::floor(tau.real() + 0.5);
  const cplx t1 = tau - shift;
  // eta(tau + n) = e^{i pi n / 12} eta(tau)
  const cplx translation = kI * pi * shift / 12.0;
  if (t1.imag() >= kEtaDirectImTau)
    return translation + kI * pi * t1 / 12.0 + log_euler_product(std::exp(2.0 * pi * kI * t1));
  // eta(t1) = eta(-1/t1) / sqrt(-i t1)
  return translation + log_eta_impl(-1.0 / t1, depth + 1) - 0.5 * std::log(-kI * t1);
}

// sum n^k q^n / (1 - q^n)
cplx lambert(cplx q, int k) {
  cplx acc{};
  cplx qn = q;
  for (int n = 1; n <= kMaxTerms; ++n) {
    const cplx term = std::pow(static_cast<double>(n), k) * qn / (1.0 - qn);
    acc += term;
    if (std::abs(term) < kSeriesEps * std::max(1.0, std::abs(acc))) break;
    qn *= q;
  }
  return acc;
}

cplx eisenstein(cplx tau, int weight) {
  require_upper_half_plane(tau);
  const ModularReduction red = reduce_tau(tau);
  const cplx q = std::exp(2.0 * pi * kI * red.tau);
  const cplx reduced = weight == 4 ? 1.0 + 240.0 * lambert(q, 3) : 1.0 - 504.0 * lambert(q, 5);
  const cplx factor = static_cast<double>(red.c) * tau + static_cast<double>(red.d);
  return reduced / std::pow(factor, weight);
}

}  // namespace

SpinStructure::SpinStructure(int n1, int n2) : nu1(n1), nu2(n2) {
  if ((n1 != 0 && n1 != 1) || (n2 != 0 && n2 != 1))
    throw Error(ErrorCode::InvalidArgument, "spin structure twists must be 0 or 1");
}

TauPoint TauPoint::from_tau(cplx tau) {
  require_upper_half_plane(tau);
  return {tau, std::exp(2.0 * pi * kI * tau)};
}

cplx log_dedekind_eta(cplx tau) {
  require_upper_half_plane(tau);
  return log_eta_impl(tau, 0);
}

ModularReduction reduce_tau(cplx tau) {
  require_upper_half_plane(tau);
  ModularReduction r;
  r.tau = tau;
  for (int iter = 0; iter < 1000; ++iter) {
    const double n = std::floor(r.tau.real() + 0.5);
    if (n != 0.0) {
      const auto k = static_cast<long long>(n);
      r.tau -= n;
      r.a -= k * r.c;
      r.b -= k * r.d;
    }
    if (std::norm(r.tau) >= 1.0 - 1e-15) return r;
    r.tau = -1.0 / r.tau;
    const long long a = r.a, b = r.b;
    r.a = -r.c;
    r.b = -r.d;
    r.c = a;
    r.d = b;
  }
  throw Error(ErrorCode::ConvergenceFailure, "tau reduction did not terminate");
}

cplx dedekind_eta(cplx tau) { return std::exp(log_dedekind_eta(tau)); }

cplx dedekind_eta(const TauPoint& tau) { return dedekind_eta(tau.tau); }

cplx theta_ab(int a, int b, cplx v, const TauPoint& tau) {
  require_upper_half_plane(tau.tau);
  const double ha = 0.5 * a, hb = 0.5 * b;
  auto term = [&](long n) {
    const double m = static_cast<double>(n) + ha;
    return std::exp(kI * pi * m * m * tau.tau + 2.0 * pi * kI * m * (v + hb));
  };
  cplx sum = term(0);
  for (long n = 1; n <= kMaxTerms; ++n) {
    const cplx up = term(n), down = term(-n);
    sum += up + down;
    if (std::abs(up) < kSeriesEps * std::max(1.0, std::abs(sum)) &&
        std::abs(down) < kSeriesEps * std::max(1.0, std::abs(sum)))
      break;
  }
  return sum;
}

cplx eisenstein_e4(cplx tau) { return eisenstein(tau, 4); }
cplx eisenstein_e6(cplx tau) { return eisenstein(tau, 6); }

cplx j_of_tau(cplx tau) {
  const cplx t = reduce_tau(tau).tau;
  const cplx e4 = eisenstein_e4(t), e6 = eisenstein_e6(t);
  const cplx e43 = e4 * e4 * e4;
  return 1728.0 * e43 / (e43 - e6 * e6);
}

cplx modular_discriminant(cplx tau, cplx omega) {
  const cplx log_delta =
      12.0 * std::log(2.0 * pi) + 24.0 * log_dedekind_eta(tau) - 12.0 * std::log(2.0 * omega);
  return std::exp(log_delta);
}

cplx eigenvalue_2dbar(long n1, long n2, const SpinStructure& nu, cplx tau, cplx omega) {
  require_upper_half_plane(tau);
  if (omega == cplx{}) throw Error(ErrorCode::InvalidArgument, "omega must be nonzero");
  const double m1 = static_cast<double>(n1) + 0.5 * (1 - nu.nu1);
  const double m2 = static_cast<double>(n2) + 0.5 * (1 - nu.nu2);
  return pi / (tau.imag() * std::conj(omega)) * (m1 * tau - m2);
}

namespace {

// The shifted lattice z = (n1 + alpha) tau - (n2 + beta) and its dual
// k = m1 + i (m2 - m1 Re tau) / Im tau, visited inside pi |.|^2 <= cutoff.
// The callback receives pi|z|^2 (and for the dual, the phase argument).
template <class DirectFn, class DualFn>
long for_each_lattice_term(const SpinStructure& nu, cplx tau, DirectFn&& direct, DualFn&& dual) {
  const double alpha = 0.5 * (1 - nu.nu1), beta = 0.5 * (1 - nu.nu2);
  const double tx = tau.real(), ty = tau.imag();
  const cplx shift = alpha * tau - beta;
  const double r2 = kEpsteinCutoff / pi;
  const double r = std::sqrt(r2);
  long count = 0;

  const long n1_max = static_cast<long>(std::ceil(r / ty + 1.0));
  for (long n1 = -n1_max; n1 <= n1_max; ++n1) {
    const double m1 = static_cast<double>(n1) + alpha;
    const double im = m1 * ty;
    if (im * im > r2) continue;
    const double w = std::sqrt(r2 - im * im);
    const double center = m1 * tx;
    const long lo = static_cast<long>(std::floor(center - w - beta)) - 1;
    const long hi = static_cast<long>(std::ceil(center + w - beta)) + 1;
    for (long n2 = lo; n2 <= hi; ++n2) {
      const double re = center - (static_cast<double>(n2) + beta);
      const double x = pi * (re * re + im * im);
      if (x > kEpsteinCutoff) continue;
      if (x == 0.0) continue;  // excluded zero mode (odd structure only)
      direct(x);
      if (++count > kEpsteinMaxPoints)
        throw Error(ErrorCode::ConvergenceFailure, "lattice sum exceeds point budget");
    }
  }

  const long m1_max = static_cast<long>(std::ceil(r)) + 1;
  for (long m1 = -m1_max; m1 <= m1_max; ++m1) {
    const double kr = static_cast<double>(m1);
    if (kr * kr > r2) continue;
    const double w = std::sqrt(r2 - kr * kr);
    const double center = kr * tx;
    const long lo = static_cast<long>(std::floor(center - w * ty)) - 1;
    const long hi = static_cast<long>(std::ceil(center + w * ty)) + 1;
    for (long m2 = lo; m2 <= hi; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      const double ki = (static_cast<double>(m2) - kr * tx) / ty;
      const double x = pi * (kr * kr + ki * ki);
      if (x > kEpsteinCutoff) continue;
      const double phase = 2.0 * pi * (kr * shift.real() + ki * shift.imag());
      dual(x, phase);
      if (++count > kEpsteinMaxPoints)
        throw Error(ErrorCode::ConvergenceFailure, "lattice sum exceeds point budget");
    }
  }
  return count;
}

double tail_estimate(double area) {
  // Integrated density of the neglected shells of both sums, doubled.
  const double direct = std::exp(-kEpsteinCutoff) / area;
  const double dual = std::expint(-kEpsteinCutoff) * -1.0;  // E1(cutoff)
  return 2.0 * (direct + dual);
}

}  // namespace

EpsteinZeta epstein_zeta_continuation(const SpinStructure& nu, const TauPoint& tau, cplx omega) {
  require_upper_half_plane(tau.tau);
  if (omega == cplx{}) throw Error(ErrorCode::InvalidArgument, "omega must be nonzero");
  const double area = tau.tau.imag();

  EpsteinZeta out;
  out.tail_bound = tail_estimate(area);
  if (out.tail_bound > kEpsteinMaxTail)
    throw Error(ErrorCode::ConvergenceFailure, "Epstein zeta tail bound above 1e-10");

  // G(0) = -1/A + sum' E1(pi|z|^2) + (1/A) sum' cos(phase) e^{-pi|k|^2} / (pi|k|^2)
  detail::CompensatedSum direct_sum, dual_sum;
  out.terms = for_each_lattice_term(
      nu, tau.tau, [&](double x) { direct_sum.add(-std::expint(-x)); },
      [&](double x, double phase) { dual_sum.add(std::cos(phase) * std::exp(-x) / x); });
  const double g0 = -1.0 / area + direct_sum.value() + dual_sum.value() / area;

  if (nu.is_odd()) {
    // G(s) = -1/s + H(s);  Z(s) = pi^s G(s) / Gamma(s)
    out.zeta0 = -1.0;
    out.zeta_prime0 = g0 - std::numbers::egamma - std::log(pi);
  } else {
    out.zeta0 = 0.0;
    out.zeta_prime0 = g0;
  }
  const double scale = pi / (area * std::abs(omega));
  out.logdet = -out.zeta_prime0 + 2.0 * std::log(scale) * out.zeta0;
  return out;
}

double epstein_zeta_logdet(const SpinStructure& nu, const TauPoint& tau, cplx omega) {
  return epstein_zeta_continuation(nu, tau, omega).logdet;
}

double epstein_zeta(const SpinStructure& nu, const TauPoint& tau, double s) {
  require_upper_half_plane(tau.tau);
  if (!(s > 0.0 && s < 1.0))
    throw Error(ErrorCode::InvalidArgument, "epstein_zeta: s must lie in (0, 1)");
  const double area = tau.tau.imag();
  namespace bm = boost::math;
  detail::CompensatedSum direct_sum, dual_sum;
  for_each_lattice_term(
      nu, tau.tau, [&](double x) { direct_sum.add(std::pow(x, -s) * bm::tgamma(s, x)); },
      [&](double x, double phase) {
        dual_sum.add(std::cos(phase) * std::pow(x, s - 1.0) * bm::tgamma(1.0 - s, x));
      });
  double g = 1.0 / (area * (s - 1.0)) + direct_sum.value() + dual_sum.value() / area;
  if (nu.is_odd()) g -= 1.0 / s;
  return std::pow(pi, s) * g / std::tgamma(s);
}

double epstein_zeta_at_zero_numeric(const SpinStructure& nu, const TauPoint& tau) {
  // zeta is smooth at 0; linear extrapolation from two small s.
  constexpr double h = 1e-6;
  return 2.0 * epstein_zeta(nu, tau, h) - epstein_zeta(nu, tau, 2.0 * h);
}

}  // namespace ellfib
