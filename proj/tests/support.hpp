#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "ellfib/curve.hpp"
#include "ellfib/family_io.hpp"

namespace ellfib::test {

inline CurveFamily fixture(const std::string& name) {
  return load_family(std::string(ELLFIB_FIXTURE_DIR) + "/" + name + ".json");
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Deterministic generators; every property test seeds its own engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  cplx complex_box(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
  }
  /// Upper half plane, Re in [-2, 2], Im in [im_lo, im_hi].
  cplx tau(double im_lo = 0.3, double im_hi = 3.0) { return {uniform(-2.0, 2.0), uniform(im_lo, im_hi)}; }
  /// Smooth Weierstrass curve with the discriminant well away from zero.
  WeierstrassCurve smooth_curve() {
    for (;;) {
      const WeierstrassCurve c{complex_box(3.0), complex_box(3.0)};
      if (relative_discriminant(c) > 1e-3) return c;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ellfib::test
