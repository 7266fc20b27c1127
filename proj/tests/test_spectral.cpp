#include <doctest.h>

#include <numbers>

#include "ellfib/error.hpp"
#include "ellfib/spectral.hpp"
#include "support.hpp"

using namespace ellfib;
using ellfib::test::Gen;
using std::numbers::pi;

namespace {

constexpr cplx kI{0.0, 1.0};

Periods lattice(cplx tau, cplx two_omega) {
  return {0.5 * two_omega, 0.5 * two_omega * tau, tau, TauPoint::from_tau(tau).q};
}

Periods rebased(const Periods& p, long long a, long long b, long long c, long long d) {
  Periods q;
  q.omega = static_cast<double>(d) * p.omega + static_cast<double>(c) * p.omega_prime;
  q.omega_prime = static_cast<double>(b) * p.omega + static_cast<double>(a) * p.omega_prime;
  q.tau = q.omega_prime / q.omega;
  q.q = std::exp(2.0 * pi * kI * q.tau);
  return q;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("square lattice with unit full period") {
    const Periods p = lattice(kI, 1.0);
    const double eta = std::abs(dedekind_eta(kI));
    CHECK(test::rel_err(fiber_volume(p), 1.0) < 1e-15);
    CHECK(test::rel_err(det_prime_laplacian(p), std::pow(eta, 4) / (4.0 * pi * pi)) < 1e-14);
    CHECK(std::abs(det_prime_laplacian(p) - 0.00882256695068) < 1e-13);
    CHECK(std::abs(det_dirichlet_annulus(p) - 0.0939285204327) < 1e-12);
    CHECK(std::abs(det_twisted(SpinStructure(0, 0), p) - 2.0) < 1e-13);
  }

  TEST_CASE("closed form versus the continuation definition for the odd structure") {
    // The continuation gives 4 Im^2 tau |omega|^2 |eta|^4, a factor (2 pi)^2
    // above det_prime_laplacian.  The factor is pinned here.
    for (const cplx tau : {kI, std::exp(kI * pi / 3.0), cplx(0.3, 1.7)}) {
      for (const cplx w : {cplx(1.0), cplx(1.0, 0.5)}) {
        const Periods p = lattice(tau, w);
        const double cont = std::exp(epstein_zeta_logdet(SpinStructure(1, 1), TauPoint::from_tau(tau), p.omega));
        CHECK(test::rel_err(cont / det_prime_laplacian(p), 4.0 * pi * pi) < 1e-10);
      }
    }
  }

  TEST_CASE("even structures: closed forms, divisor form and continuation agree") {
    Gen g(51);
    for (int trial = 0; trial < 30; ++trial) {
      const Periods p = lattice(g.tau(0.5, 2.5), g.complex_box(2.0) + 2.5);
      for (const auto& s : kEvenSpinStructures) {
        const SpinStructure nu(s[0], s[1]);
        const double closed = det_twisted(nu, p);
        CHECK(test::rel_err(det_twisted_divisor_form(nu, p), closed) < 1e-10);
        const double cont = std::exp(epstein_zeta_logdet(nu, TauPoint::from_tau(p.tau), p.omega));
        CHECK(test::rel_err(cont, closed) < 1e-8);
      }
    }
    CHECK_THROWS_AS(det_twisted(SpinStructure(1, 1), lattice(kI, 1.0)), Error);
  }

  TEST_CASE("property: product of the even determinants is 4") {
    Gen g(52);
    for (int trial = 0; trial < 100; ++trial) {
      const Periods p = lattice(g.tau(), 1.0);
      double prod = 1.0;
      for (const auto& s : kEvenSpinStructures) prod *= det_twisted(SpinStructure(s[0], s[1]), p);
      CHECK(std::abs(prod - 4.0) < 1e-10);
    }
  }

  TEST_CASE("det' is invariant under change of lattice basis and scales like |omega|^2") {
    const Periods p = lattice(cplx(0.2, 1.1), cplx(0.8, -0.3));
    const Periods q = rebased(p, 1, 1, 0, 1);
    const Periods r = rebased(p, 0, -1, 1, 0);
    CHECK(test::rel_err(det_prime_laplacian(q), det_prime_laplacian(p)) < 1e-12);
    CHECK(test::rel_err(det_prime_laplacian(r), det_prime_laplacian(p)) < 1e-12);
    const cplx s(1.7, 0.4);
    const Periods ps = lattice(p.tau, 2.0 * s * p.omega);
    CHECK(test::rel_err(det_prime_laplacian(ps), std::norm(s) * det_prime_laplacian(p)) < 1e-12);
    CHECK(test::rel_err(det_prime_laplacian_modular(p), det_prime_laplacian(p)) < 1e-10);
  }

  TEST_CASE("Quillen norm of (dz)^-1") {
    CHECK(std::abs(quillen_norm_sigma({4.0, 0.0}) - std::sqrt(2.0)) < 1e-15);
    CHECK(quillen_norm_sigma({3.0, 1.0}) == 0.0);
    Gen g(53);
    for (int trial = 0; trial < 50; ++trial) {
      const WeierstrassCurve c = g.smooth_curve();
      const FiberSpectralData d = fiber_spectral_data(c);
      CHECK(d.det_laplace_prime > 0.0);
      CHECK(test::rel_err(quillen_norm_from_determinant(d.periods), d.quillen_norm_sigma) < 1e-9);
    }
  }

  TEST_CASE("Quillen norm transforms with |v| under the chart change") {
    const CurveFamily f = test::fixture("nf1");
    const VChart vc = to_v_chart(f);
    for (const cplx v : {cplx(0.3, 0.2), cplx(-0.5, 0.1), cplx(0.05, -0.4)}) {
      const cplx u = -1.0 / v;
      const double nv = quillen_norm_sigma({vc.g2(v), vc.g3(v)});
      CHECK(test::rel_err(nv, std::abs(v) * quillen_norm_sigma(fiber(f, u))) < 1e-12);
    }
  }

  TEST_CASE("annulus and Dirichlet identities") {
    Gen g(54);
    for (int trial = 0; trial < 50; ++trial) {
      const Periods p = lattice(g.tau(0.3, 4.0), g.complex_box(1.0) + 1.5);
      const double dd = det_dirichlet_annulus(p);
      CHECK(std::abs(dd * dd - det_prime_laplacian(p)) <= 1e-12 * det_prime_laplacian(p));
      CHECK(test::rel_err(det_dirichlet_annulus_eta_form(p), dd) < 1e-12);
      CHECK(test::rel_err(det_dirichlet_flat_rescaled(p), det_dirichlet_flat(p)) < 1e-9);
      const AnnulusModel m = annulus_model(p);
      CHECK(test::rel_err(m.r1, std::sqrt(std::abs(p.q))) < 1e-12);
      CHECK(test::rel_err(m.r2 * m.r1, 1.0) < 1e-15);
      CHECK(test::rel_err(m.lambda, std::abs(p.omega) / pi) < 1e-15);
      CHECK(test::rel_err(m.conformal_l, 2.0 * pi * pi * p.tau.imag()) < 1e-15);
    }
    const double eta2 = std::abs(dedekind_eta(2.0 * kI));
    CHECK(test::rel_err(det_dirichlet_flat(lattice(2.0 * kI, 1.0)), 2.0 * eta2 * eta2 * std::exp(-2.0 * pi / 3.0)) < 1e-13);
  }

  TEST_CASE("degenerating annulus: q-expansions") {
    const Periods p10 = lattice(10.0 * kI, 1.0);
    const double q10 = std::abs(p10.q);
    CHECK(test::rel_err(quillen_norm_sigma_hat(p10), std::pow(q10, 1.0 / 12.0) / (4.0 * pi * pi)) < 1e-8);
    CHECK(test::rel_err(quillen_norm_sigma_hat(lattice(10.0 * kI, cplx(3.0, 1.0))), quillen_norm_sigma_hat(p10)) < 1e-15);
    for (double t : {5.0, 8.0, 12.0}) {
      const Periods p = lattice(t * kI, 1.0);
      const double q = std::abs(p.q);
      // 1 / prod (1 - q^n)^2 = 1 + 2q + 5q^2 + ...
      CHECK(std::abs(std::abs(4.0 * pi * pi * quillen_norm_sigma_hat_factor(p) - 1.0) - 2.0 * q) <= 6.0 * q * q + 1e-15);
      CHECK(test::rel_err(det_dirichlet_flat(p), t * std::pow(q, 0.25)) < 3.0 * q + 1e-14);
    }
  }
}
