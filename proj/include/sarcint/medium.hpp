#pragma once

#include <array>
#include <vector>

#include "sarcint/common.hpp"
#include "sarcint/rng.hpp"
#include "sarcint/scene.hpp"

namespace sarcint::medium {

/// Normalized covariance of the ray-averaged medium fluctuations as a
/// function of sensor separation r in correlation lengths:
///   C(r) = (1/r) * Integral_0^r exp(-pi h^2) dh = erf(sqrt(pi) r) / (2 r),
/// with C(0) = 1.  Decreasing, positive, C(r) ~ 1/(2r) for large r.
double ray_covariance(double r);

/// One draw of the correlated travel-time perturbations, one value per sensor.
struct TravelTimeRealization {
  std::vector<double> values;
  rng::StreamKey key;
};

/// Draws travel-time vectors with covariance tau^2 C(|dx|/ell_c).
/// The covariance factor (eigendecomposition, negative eigenvalues clipped
/// to zero) is computed once at construction and reused for every draw.
class TravelTimeSampler {
 public:
  TravelTimeSampler(const scene::ApertureGeometry& aperture, const scene::DerivedScales& scales,
                    double ell_c);

  /// Pure function of `key`: identical keys give bit-identical draws.
  TravelTimeRealization draw(const rng::StreamKey& key) const;

  int size() const { return static_cast<int>(factor_.rows()); }

 private:
  MatrixXd factor_;  // tau * E * sqrt(max(Lambda, 0))
};

/// E[exp(2 i omega T)] for a single ray: exp(-2 omega^2 tau^2).
double moment1(double omega, double tau);

/// E[exp(2 i (omega1 T - omega2 T'))] for rays separated by dx:
/// exp(-2 (omega1-omega2)^2 tau^2 - 4 omega1 omega2 tau^2 (1 - C(dx/ell_c))).
double moment2(double omega1, double omega2, double dx, double tau, double ell_c);

/// Gaussian small-offset approximation of moment2:
/// exp(-dx^2/(2 X_d^2) - (omega1-omega2)^2/(2 Omega_d^2)).
double moment2_gaussian(double omega1, double omega2, double dx,
                        const scene::DerivedScales& scales);

/// E[exp(2i(w1 T1 - w2 T2 + w3 T3 - w4 T4))] for rays at cross-range
/// positions x1..x4:
///   exp(-2 tau^2 [ sum w_j^2 + 2 w1 w4 C14 + 2 w2 w3 C23
///                  - 2 w1 w2 C12 - 2 w1 w3 C13 - 2 w2 w4 C24 - 2 w3 w4 C34 ])
/// with Cjk = C(|xj - xk|/ell_c).
double moment4(const std::array<double, 4>& omegas, const std::array<double, 4>& positions,
               double tau, double ell_c);

}  // namespace sarcint::medium
