#include "sarcint/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sarcint::forward {

double pulse_spectrum(double omega, const scene::PhysicalParams& p) {
  const double d = omega - p.omega_o;
  return std::exp(-d * d / (2.0 * p.B * p.B));
}

Complex green_homogeneous(double omega, double c, double dist) {
  if (!(dist > 0.0)) {
    throw std::domain_error("green_homogeneous: far-field form needs a positive distance");
  }
  const double k = omega / c;
  const double phase = k * dist + kPi / 4.0;
  const double amp = 1.0 / (std::pow(2.0, 1.5) * std::sqrt(kPi * k * dist));
  return amp * Complex(std::cos(phase), std::sin(phase));
}

double sensor_to_point_distance(const scene::PhysicalParams& p, double x_cross, const Point& y) {
  return std::hypot(p.L - y.par, x_cross - y.perp);
}

Complex green_random(double omega, const scene::PhysicalParams& p, double x_cross, const Point& y,
                     double travel_time) {
  const Complex g = green_homogeneous(omega, p.c, sensor_to_point_distance(p, x_cross, y));
  return g * std::polar(1.0, omega * travel_time);
}

void NoiseSpec::validate() const {
  if (sigma_w < 0.0 || percent_of_max < 0.0) {
    throw InvalidInput("noise spec: levels must be nonnegative");
  }
  if (sigma_w > 0.0 && percent_of_max > 0.0) {
    throw InvalidInput("noise spec: give either sigma_w or percent_of_max, not both");
  }
}

DataMatrix synthesize_data(const scene::PhysicalParams& p, const scene::Reflectivity& refl,
                           const scene::FrequencyGrid& freq, const scene::ApertureGeometry& ap,
                           const medium::TravelTimeRealization& travel_times,
                           const NoiseSpec& noise, const rng::StreamKey& noise_key) {
  p.validate();
  refl.validate(p.ell_c);
  noise.validate();
  const int M = static_cast<int>(freq.omegas.size());
  const int S = static_cast<int>(ap.positions.size());
  if (M < 1 || S < 1) throw InvalidInput("synthesize_data: empty grids");
  if (static_cast<int>(travel_times.values.size()) != S) {
    throw InvalidInput("synthesize_data: travel-time vector does not match the aperture");
  }

  // Canonical scatterer order: the accumulated sums (and hence every bit of
  // the output) must not depend on how the caller happened to list them.
  std::vector<std::size_t> order(refl.scatterers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& A = refl.scatterers[i];
    const auto& B = refl.scatterers[j];
    return std::tie(A.y_par, A.y_perp, A.amplitude) < std::tie(B.y_par, B.y_perp, B.amplitude);
  });

  DataMatrix out;
  out.values = MatrixXcd::Zero(M, S);
  out.freq = freq;
  out.aperture = ap;
  out.params = p;
  out.medium_key = travel_times.key;
  out.noise_key = noise_key;

  for (int n = 0; n < S; ++n) {
    const double x = ap.positions[n];
    for (int m = 0; m < M; ++m) {
      const double omega = freq.omegas[m];
      const double k = omega / p.c;
      Complex sum(0.0, 0.0);
      for (const std::size_t j : order) {
        const auto& s = refl.scatterers[j];
        const double d = sensor_to_point_distance(p, x, {s.y_par, s.y_perp});
        // Squared Green's function: exp(2i(k d + pi/4)) / (8 pi k d).
        const Complex g2 = Complex(0.0, 1.0) * std::polar(1.0 / (8.0 * kPi * k * d), 2.0 * k * d);
        sum += s.amplitude * g2;
      }
      const Complex medium_phase = std::polar(1.0, 2.0 * omega * travel_times.values[n]);
      out.values(m, n) = pulse_spectrum(omega, p) * k * k * sum * medium_phase;
    }
  }

  double sigma_w = noise.sigma_w;
  if (noise.percent_of_max > 0.0) {
    const double peak = out.values.cwiseAbs().maxCoeff();
    const double domega = freq.spacing();
    if (domega <= 0.0) throw InvalidInput("synthesize_data: percent noise needs >= 2 frequencies");
    sigma_w = noise.percent_of_max / 100.0 * peak * std::sqrt(domega);
  }
  out.params.sigma_w = sigma_w;
  if (sigma_w > 0.0) {
    const double entry_std = sigma_w / std::sqrt(freq.spacing());
    const double component_std = entry_std / std::sqrt(2.0);
    for (int n = 0; n < S; ++n) {
      for (int m = 0; m < M; ++m) {
        const std::uint64_t index = static_cast<std::uint64_t>(m) * S + n;
        const auto [g0, g1] = rng::normal_pair(noise_key, index);
        out.values(m, n) += component_std * Complex(g0, g1);
      }
    }
  }
  return out;
}

}  // namespace sarcint::forward
