#pragma once

#include <cstdint>

#include "sarcint/common.hpp"
#include "sarcint/medium.hpp"
#include "sarcint/rng.hpp"
#include "sarcint/scene.hpp"

namespace sarcint {

/// A point in the search region.  `par` is the range coordinate measured from
/// the search-region center, positive toward the aperture; `perp` is
/// cross-range.  The aperture center sits at range distance L.
struct Point {
  double par = 0.0;
  double perp = 0.0;
};

}  // namespace sarcint

namespace sarcint::forward {

/// Gaussian pulse spectrum exp(-(omega - omega_o)^2 / (2 B^2)).
double pulse_spectrum(double omega, const scene::PhysicalParams& p);

/// Far-field 2.5-D Green's function at propagation distance `dist`:
/// exp(i k dist + i pi/4) / (2^{3/2} sqrt(pi k dist)).  Throws for dist <= 0
/// (the far-field form has no meaning at the source point).
Complex green_homogeneous(double omega, double c, double dist);

/// Distance from the sensor at cross-range x_cross (on the aperture line) to
/// the search point y.
double sensor_to_point_distance(const scene::PhysicalParams& p, double x_cross, const Point& y);

/// Green's function between sensor and search point through the fluctuating
/// medium under the travel-time model: homogeneous value times
/// exp(i omega travel_time).
Complex green_random(double omega, const scene::PhysicalParams& p, double x_cross, const Point& y,
                     double travel_time);

/// How the additive-noise level is specified.  Exactly one may be nonzero.
///   sigma_w         continuum spectral density; entries get variance sigma_w^2/domega
///   percent_of_max  per-entry std as a percentage of the largest noise-free
///                   entry modulus (the figure-labeling convention)
struct NoiseSpec {
  double sigma_w = 0.0;
  double percent_of_max = 0.0;

  void validate() const;
};

/// Frequency x sensor array of synthetic measurements plus everything needed
/// to interpret and reproduce it.
struct DataMatrix {
  MatrixXcd values;  ///< (num frequencies) x (num sensors)
  scene::FrequencyGrid freq;
  scene::ApertureGeometry aperture;
  scene::PhysicalParams params;  ///< params.sigma_w holds the resolved noise level
  rng::StreamKey medium_key;
  rng::StreamKey noise_key;

  int num_freq() const { return static_cast<int>(values.rows()); }
  int num_sensors() const { return static_cast<int>(values.cols()); }
};

/// Synthesizes the frequency-domain measurements for one medium realization:
///   entry(m, n) = pulse(omega_m) k_m^2 sum_j rho_j G(omega_m, d(x_n, y_j))^2
///                 * exp(2 i omega_m T_n)   [+ complex white noise]
/// Distances are exact (no paraxial approximation on the synthesis side).
/// Scatterer contributions are accumulated in a canonical order so the result
/// is bit-identical under permutations of the scatterer list.  Noise entries
/// are keyed per (noise_key, entry index) and therefore reproducible.
DataMatrix synthesize_data(const scene::PhysicalParams& p, const scene::Reflectivity& refl,
                           const scene::FrequencyGrid& freq, const scene::ApertureGeometry& ap,
                           const medium::TravelTimeRealization& travel_times,
                           const NoiseSpec& noise, const rng::StreamKey& noise_key);

}  // namespace sarcint::forward
