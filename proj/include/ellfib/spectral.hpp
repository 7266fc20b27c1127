#pragma once

#include "ellfib/curve.hpp"
#include "ellfib/modular.hpp"
#include "ellfib/periods.hpp"

namespace ellfib {

/// Area of the fiber in the flat metric dz dz-bar: 4 Im tau |omega|^2.
double fiber_volume(const Periods& p);

/// det' of the fiber Laplacian (odd structure, zero mode removed), closed
/// form 4 Im^2 tau |omega|^2 |eta|^4 / (2 pi)^2.
double det_prime_laplacian(const Periods& p);

/// The same quantity written through the modular discriminant,
/// vol^2 / (2 pi)^4 |Delta_modular|^{1/6}.  Kept separate so the two forms
/// can be compared.
double det_prime_laplacian_modular(const Periods& p);

/// |theta_{nu1 nu2}(0|tau) / eta(tau)|^2 for an even structure; throws
/// OddStructure for (1,1).
double det_twisted(const SpinStructure& nu, const Periods& p);

/// Second form of the twisted determinant: Gaussian prefactor times
/// |theta(xi|tau) / eta|^2 at the twist divisor xi = -nu2/2 - nu1 tau/2.
double det_twisted_divisor_form(const SpinStructure& nu, const Periods& p);

/// Quillen norm of the section (dz)^{-1}: |Delta|^{1/12}.  Zero at nodes.
double quillen_norm_sigma(const WeierstrassCurve& curve);

/// The Quillen norm assembled from the metric definition,
/// (2 pi)^2 sqrt(det') / (||1|| ||dz||) with ||1||^2 = ||dz||^2 = vol.
double quillen_norm_from_determinant(const Periods& p);

/// Dirichlet determinant of -4 d dbar on the annulus model: sqrt(det').
double det_dirichlet_annulus(const Periods& p);
/// (vol / 2 pi) |eta^2 / (2 omega)|, the annulus formula before simplification.
double det_dirichlet_annulus_eta_form(const Periods& p);

/// Dirichlet determinant of the flat annulus Laplacian:
/// Im tau |eta|^2 |q|^{1/6}.
double det_dirichlet_flat(const Periods& p);
/// The same value from the conformal-rescaling path:
/// det_D(Lambda^2 Delta) exp(-L / 6 pi) with L = 2 pi^2 Im tau and
/// det_D(Lambda^2 Delta) = Lambda^{2 zeta_D(0)} det_D(Delta), 2 zeta_D(0) = -1.
double det_dirichlet_flat_rescaled(const Periods& p);

/// Norm of (dz)^{-1} for the flat-annulus metric: |q^{1/6} / eta^2| / (2 pi)^2.
double quillen_norm_sigma_hat(const Periods& p);
/// |q^{1/12} / ((2 pi)^2 eta^2)|, the factor left after pulling out |q|^{1/12};
/// tends to 1/(2 pi)^2 as q -> 0.
double quillen_norm_sigma_hat_factor(const Periods& p);

struct FiberSpectralData {
  Periods periods;
  double volume = 0.0;
  double det_laplace_prime = 0.0;
  double quillen_norm_sigma = 0.0;
};

FiberSpectralData fiber_spectral_data(const WeierstrassCurve& curve);

/// Annulus picture of a fiber near a node.
struct AnnulusModel {
  Periods periods;
  double r1 = 0.0;           // |q|^{1/2}
  double r2 = 0.0;           // 1 / r1
  double lambda = 0.0;       // |omega| / pi
  double conformal_l = 0.0;  // 2 pi^2 Im tau
};

AnnulusModel annulus_model(const Periods& p);

}  // namespace ellfib
