#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sarcint/common.hpp"

namespace sarcint::scene {

/// Physical description of one acquisition.  Units are consistent but
/// arbitrary; the bundled configs use c = 1 and lambda_o = 1.
///
///   c        wave speed
///   omega_o  carrier (center) angular frequency
///   B        bandwidth of the Gaussian pulse spectrum
///   L        standoff range from aperture center to the search region
///   a        synthetic aperture length (cross-range extent)
///   N        number of sensor intervals; N+1 positions are used
///   sigma    medium fluctuation strength (0 = homogeneous)
///   ell_c    medium correlation length
///   sigma_w  additive-noise level (continuum spectral density convention)
struct PhysicalParams {
  double c = 1.0;
  double omega_o = 2.0 * kPi;
  double B = 0.4 * kPi;
  double L = 100.0;
  double a = 20.0;
  int N = 60;
  double sigma = 0.0;
  double ell_c = 100.0;
  double sigma_w = 0.0;

  /// Throws InvalidInput unless all invariants hold (positivity, B < omega_o,
  /// a < L, N >= 1, sigma >= 0, sigma_w >= 0).
  void validate() const;
};

/// Scales implied by PhysicalParams.  When sigma == 0 the medium never
/// decoheres; decoherence_length/frequency are +infinity in that case.
struct DerivedScales {
  double lambda_o = 0.0;  ///< carrier wavelength 2 pi c / omega_o
  double k_o = 0.0;       ///< carrier wavenumber omega_o / c
  double tau = 0.0;       ///< travel-time fluctuation std sigma sqrt(ell_c L) / (2c)
  double decoherence_length = 0.0;  ///< X_d: aperture offset where coherence drops
  double decoherence_frequency = 0.0;  ///< Omega_d = 1 / (2 tau)

  bool has_decoherence() const { return std::isfinite(decoherence_length); }
};

DerivedScales derive_scales(const PhysicalParams& p);

/// Checks the scattering-regime assumptions behind the model and returns a
/// human-readable warning for each one that fails ("much less than" is
/// interpreted as a ratio below 0.2).  Empty result = comfortably in regime.
std::vector<std::string> validate_regime(const PhysicalParams& p, const DerivedScales& d);

struct PointScatterer {
  double y_par = 0.0;   ///< range coordinate, measured from search-region center
  double y_perp = 0.0;  ///< cross-range coordinate
  double amplitude = 1.0;
};

/// Sparse reflectivity: a list of point scatterers near the origin.
struct Reflectivity {
  std::vector<PointScatterer> scatterers;

  /// Throws InvalidInput if any amplitude is negative or the support diameter
  /// reaches ell_c (the travel-time model treats the region as a single ray).
  void validate(double ell_c) const;
};

/// Uniform sensor line of N+1 positions spanning [-a/2, a/2] with Gaussian
/// apodization weights exp(-x^2 / a^2).
struct ApertureGeometry {
  std::vector<double> positions;
  std::vector<double> apodization;

  double spacing() const {
    return positions.size() > 1 ? (positions.back() - positions.front()) / (positions.size() - 1)
                                : 0.0;
  }
};

ApertureGeometry build_aperture(const PhysicalParams& p);

/// Uniform frequency samples covering [omega_o - q B, omega_o + q B].
struct FrequencyGrid {
  std::vector<double> omegas;

  double spacing() const {
    return omegas.size() > 1 ? (omegas.back() - omegas.front()) / (omegas.size() - 1) : 0.0;
  }
};

/// Builds a grid of M samples (M odd so omega_o itself is sampled) and
/// validates the spacing against the finest scale it must resolve:
/// min(B, Omega)/4, where Omega is the optional interferometric window.
/// M == 0 picks the default M with spacing min(B, Omega)/8.
FrequencyGrid build_frequency_grid(const PhysicalParams& p, double q = 3.0, int M = 0,
                                   std::optional<double> Omega = std::nullopt);

}  // namespace sarcint::scene
