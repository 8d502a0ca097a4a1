#include "sarcint/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sarcint::scene {

void PhysicalParams::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidInput("physical params: " + msg); };
  if (!(c > 0.0)) fail("wave speed c must be positive");
  if (!(omega_o > 0.0)) fail("carrier omega_o must be positive");
  if (!(B > 0.0)) fail("bandwidth B must be positive");
  if (!(B < omega_o)) fail("bandwidth B must be below the carrier omega_o");
  if (!(L > 0.0)) fail("range L must be positive");
  if (!(a > 0.0)) fail("aperture a must be positive");
  if (!(a < L)) fail("aperture a must be smaller than the range L");
  if (N < 1) fail("sensor interval count N must be at least 1");
  if (sigma < 0.0) fail("fluctuation strength sigma must be nonnegative");
  if (!(ell_c > 0.0)) fail("correlation length ell_c must be positive");
  if (sigma_w < 0.0) fail("noise level sigma_w must be nonnegative");
}

DerivedScales derive_scales(const PhysicalParams& p) {
  p.validate();
  DerivedScales d;
  d.lambda_o = 2.0 * kPi * p.c / p.omega_o;
  d.k_o = p.omega_o / p.c;
  d.tau = p.sigma * std::sqrt(p.ell_c * p.L) / (2.0 * p.c);
  if (p.sigma > 0.0) {
    d.decoherence_length = std::sqrt(3.0) * d.lambda_o * std::sqrt(p.ell_c) /
                           (std::pow(2.0 * kPi, 1.5) * p.sigma * std::sqrt(p.L));
    d.decoherence_frequency = 1.0 / (2.0 * d.tau);
  } else {
    d.decoherence_length = std::numeric_limits<double>::infinity();
    d.decoherence_frequency = std::numeric_limits<double>::infinity();
  }
  return d;
}

std::vector<std::string> validate_regime(const PhysicalParams& p, const DerivedScales& d) {
  constexpr double kMuch = 0.2;  // "much less than" = ratio below this
  std::vector<std::string> warnings;
  auto warn = [&warnings](const std::string& msg) { warnings.push_back(msg); };

  if (p.sigma == 0.0) {
    warn("not in strong-fluctuation regime (omega_o*tau = 0): medium is homogeneous");
    return warnings;
  }
  const double forward = p.sigma * p.sigma * std::pow(p.L / p.ell_c, 3.0);
  const double diffraction = d.lambda_o * d.lambda_o / (p.sigma * p.sigma * p.ell_c * p.L);
  std::ostringstream os;
  if (forward >= kMuch * diffraction) {
    os.str("");
    os << "forward-scattering condition violated: sigma^2 L^3/ell_c^3 = " << forward
       << " is not well below lambda_o^2/(sigma^2 ell_c L) = " << diffraction;
    warn(os.str());
  }
  if (diffraction >= kMuch) {
    os.str("");
    os << "random travel-time condition violated: lambda_o^2/(sigma^2 ell_c L) = " << diffraction
       << " is not well below 1";
    warn(os.str());
  }
  const double phase = p.omega_o * d.tau;
  if (phase <= 1.0 / kMuch) {
    os.str("");
    os << "not in strong-fluctuation regime (omega_o*tau = " << phase << " is not well above 1)";
    warn(os.str());
  }
  return warnings;
}

void Reflectivity::validate(double ell_c) const {
  for (const auto& s : scatterers) {
    if (s.amplitude < 0.0) throw InvalidInput("reflectivity: amplitudes must be nonnegative");
  }
  double diameter = 0.0;
  for (std::size_t i = 0; i < scatterers.size(); ++i) {
    for (std::size_t j = i + 1; j < scatterers.size(); ++j) {
      diameter = std::max(diameter, std::hypot(scatterers[i].y_par - scatterers[j].y_par,
                                               scatterers[i].y_perp - scatterers[j].y_perp));
    }
  }
  if (diameter >= ell_c) {
    throw InvalidInput(
        "reflectivity: support diameter must stay below the medium correlation length");
  }
}

ApertureGeometry build_aperture(const PhysicalParams& p) {
  p.validate();
  ApertureGeometry g;
  g.positions.resize(p.N + 1);
  g.apodization.resize(p.N + 1);
  const double dx = p.a / p.N;
  for (int n = 0; n <= p.N; ++n) {
    const double x = -0.5 * p.a + n * dx;
    g.positions[n] = x;
    g.apodization[n] = std::exp(-x * x / (p.a * p.a));
  }
  return g;
}

FrequencyGrid build_frequency_grid(const PhysicalParams& p, double q, int M,
                                   std::optional<double> Omega) {
  p.validate();
  if (!(q > 0.0)) throw InvalidInput("frequency grid: span factor q must be positive");
  if (Omega && !(*Omega > 0.0)) throw InvalidInput("frequency grid: Omega must be positive");
  const double finest = Omega ? std::min(p.B, *Omega) : p.B;
  const double span = 2.0 * q * p.B;
  if (M == 0) {
    M = 2 * static_cast<int>(std::ceil(span / (finest / 8.0) / 2.0)) + 1;
  }
  if (M < 3) throw InvalidInput("frequency grid: need at least 3 samples");
  if (M % 2 == 0) {
    throw InvalidInput("frequency grid: sample count must be odd so omega_o is on the grid");
  }
  const double domega = span / (M - 1);
  // Slack of a few ulp so sample counts sized exactly at the limit do not
  // trip the check through benign rounding.
  if (domega > finest / 4.0 * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "frequency grid: spacing " << domega << " is coarser than min(B, Omega)/4 = "
       << finest / 4.0 << "; increase the sample count";
    throw InvalidInput(os.str());
  }
  FrequencyGrid grid;
  grid.omegas.resize(M);
  const int center = (M - 1) / 2;
  // Built about the center so omega_o itself is one of the samples.
  for (int m = 0; m < M; ++m) grid.omegas[m] = p.omega_o + (m - center) * domega;
  return grid;
}

}  // namespace sarcint::scene
