#include "sarcint/medium.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace sarcint::medium {

double ray_covariance(double r) {
  if (r < 0.0) r = -r;
  if (r < 1e-6) {
    // Series of erf(sqrt(pi) r)/(2r) about r = 0; two terms suffice here.
    return 1.0 - kPi * r * r / 3.0;
  }
  return std::erf(std::sqrt(kPi) * r) / (2.0 * r);
}

TravelTimeSampler::TravelTimeSampler(const scene::ApertureGeometry& aperture,
                                     const scene::DerivedScales& scales, double ell_c) {
  const int n = static_cast<int>(aperture.positions.size());
  if (n == 0) throw InvalidInput("travel-time sampler: empty aperture");
  if (scales.tau == 0.0) {
    factor_ = MatrixXd::Zero(n, n);
    return;
  }
  MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double c = ray_covariance((aperture.positions[i] - aperture.positions[j]) / ell_c);
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("travel-time sampler: eigendecomposition failed");
  }
  const VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  factor_ = scales.tau * es.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
}

TravelTimeRealization TravelTimeSampler::draw(const rng::StreamKey& key) const {
  const int n = size();
  VectorXd g(n);
  for (int i = 0; i < n; i += 2) {
    const auto [g0, g1] = rng::normal_pair(key, static_cast<std::uint64_t>(i / 2));
    g[i] = g0;
    if (i + 1 < n) g[i + 1] = g1;
  }
  TravelTimeRealization out;
  out.key = key;
  const VectorXd t = factor_ * g;
  out.values.assign(t.data(), t.data() + n);
  return out;
}

double moment1(double omega, double tau) { return std::exp(-2.0 * omega * omega * tau * tau); }

double moment2(double omega1, double omega2, double dx, double tau, double ell_c) {
  const double dw = omega1 - omega2;
  const double decorr = 1.0 - ray_covariance(dx / ell_c);
  return std::exp(-2.0 * dw * dw * tau * tau - 4.0 * omega1 * omega2 * tau * tau * decorr);
}

double moment2_gaussian(double omega1, double omega2, double dx,
                        const scene::DerivedScales& scales) {
  if (!scales.has_decoherence()) return 1.0;
  const double dw = omega1 - omega2;
  const double xr = dx / scales.decoherence_length;
  const double wr = dw / scales.decoherence_frequency;
  return std::exp(-0.5 * xr * xr - 0.5 * wr * wr);
}

double moment4(const std::array<double, 4>& w, const std::array<double, 4>& x, double tau,
               double ell_c) {
  auto C = [&](int i, int j) { return ray_covariance((x[i] - x[j]) / ell_c); };
  double s = w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
  s += 2.0 * w[0] * w[3] * C(0, 3) + 2.0 * w[1] * w[2] * C(1, 2);
  s -= 2.0 * w[0] * w[1] * C(0, 1) + 2.0 * w[0] * w[2] * C(0, 2) +
       2.0 * w[1] * w[3] * C(1, 3) + 2.0 * w[2] * w[3] * C(2, 3);
  return std::exp(-2.0 * tau * tau * s);
}

}  // namespace sarcint::medium
