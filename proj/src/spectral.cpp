#include "ellfib/spectral.hpp"

#include <cmath>
#include <numbers>

#include "ellfib/error.hpp"

namespace ellfib {

namespace {

using std::numbers::pi;

// ln |eta(tau)| without forming eta, which underflows for large Im tau.
double log_abs_eta(cplx tau) { return log_dedekind_eta(tau).real(); }

}  // namespace

double fiber_volume(const Periods& p) { return 4.0 * p.tau.imag() * std::norm(p.omega); }

double det_prime_laplacian(const Periods& p) {
  const double im = p.tau.imag();
  return std::exp(2.0 * std::log(2.0 * im * std::abs(p.omega)) + 4.0 * log_abs_eta(p.tau) -
                  2.0 * std::log(2.0 * pi));
}

double det_prime_laplacian_modular(const Periods& p) {
  const double vol = fiber_volume(p);
  const double delta_abs = std::abs(modular_discriminant(p.tau, p.omega));
  return vol * vol / std::pow(2.0 * pi, 4) * std::pow(delta_abs, 1.0 / 6.0);
}

double det_twisted(const SpinStructure& nu, const Periods& p) {
  if (nu.is_odd()) throw Error(ErrorCode::OddStructure, "(1,1) has a zero mode; use det_prime_laplacian");
  const TauPoint t = TauPoint::from_tau(p.tau);
  return std::norm(theta_ab(nu.nu1, nu.nu2, 0.0, t) / dedekind_eta(t));
}

double det_twisted_divisor_form(const SpinStructure& nu, const Periods& p) {
  if (nu.is_odd()) throw Error(ErrorCode::OddStructure, "(1,1) has a zero mode; use det_prime_laplacian");
  const TauPoint t = TauPoint::from_tau(p.tau);
  const cplx xi = -0.5 * nu.nu2 - 0.5 * nu.nu1 * p.tau;
  const double gauss = std::exp(-2.0 * pi * xi.imag() * xi.imag() / p.tau.imag());
  return gauss * std::norm(theta_ab(0, 0, xi, t) / dedekind_eta(t));
}

double quillen_norm_sigma(const WeierstrassCurve& curve) {
  return std::pow(std::abs(discriminant(curve)), 1.0 / 12.0);
}

double quillen_norm_from_determinant(const Periods& p) {
  return 4.0 * pi * pi * std::sqrt(det_prime_laplacian(p)) / fiber_volume(p);
}

double det_dirichlet_annulus(const Periods& p) { return std::sqrt(det_prime_laplacian(p)); }

double det_dirichlet_annulus_eta_form(const Periods& p) {
  const cplx eta = dedekind_eta(p.tau);
  return fiber_volume(p) / (2.0 * pi) * std::abs(eta * eta / (2.0 * p.omega));
}

double det_dirichlet_flat(const Periods& p) {
  const double im = p.tau.imag();
  // |q|^{1/6} = exp(-pi Im tau / 3)
  return im * std::exp(2.0 * log_abs_eta(p.tau) - pi * im / 3.0);
}

double det_dirichlet_flat_rescaled(const Periods& p) {
  const AnnulusModel m = annulus_model(p);
  constexpr double two_zeta_d0 = -1.0;
  const double det_scaled = std::pow(m.lambda, two_zeta_d0) * det_dirichlet_annulus(p);
  return det_scaled * std::exp(-m.conformal_l / (6.0 * pi));
}

double quillen_norm_sigma_hat(const Periods& p) {
  return std::exp(-pi * p.tau.imag() / 3.0 - 2.0 * log_abs_eta(p.tau)) / (4.0 * pi * pi);
}

double quillen_norm_sigma_hat_factor(const Periods& p) {
  return std::exp(-pi * p.tau.imag() / 6.0 - 2.0 * log_abs_eta(p.tau)) / (4.0 * pi * pi);
}

FiberSpectralData fiber_spectral_data(const WeierstrassCurve& curve) {
  FiberSpectralData d;
  d.periods = compute_periods(curve);
  d.volume = fiber_volume(d.periods);
  d.det_laplace_prime = det_prime_laplacian(d.periods);
  d.quillen_norm_sigma = quillen_norm_sigma(curve);
  return d;
}

AnnulusModel annulus_model(const Periods& p) {
  AnnulusModel m;
  m.periods = p;
  m.r1 = std::exp(-pi * p.tau.imag());
  m.r2 = 1.0 / m.r1;
  m.lambda = std::abs(p.omega) / pi;
  m.conformal_l = 2.0 * pi * pi * p.tau.imag();
  return m;
}

}  // namespace ellfib
