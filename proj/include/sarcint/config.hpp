#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "sarcint/forward.hpp"
#include "sarcint/imaging.hpp"
#include "sarcint/rng.hpp"
#include "sarcint/scene.hpp"

namespace sarcint::config {

/// Frequency-sampling controls.  `samples == 0` lets the builder choose the
/// count from the finest window scale (spacing min(B, Omega)/8).
struct FrequencyConfig {
  double q = 3.0;   ///< grid spans [omega_o - q B, omega_o + q B]
  int samples = 0;  ///< odd sample count, or 0 for automatic
};

/// `global` selects the whole reproducible universe; the three realization
/// indices pick individual draws within their streams.
struct SeedsConfig {
  std::uint64_t global = 0;
  std::uint64_t medium_realization = 0;
  std::uint64_t noise_realization = 0;
  std::uint64_t init = 0;  ///< phase-retrieval initialization draw
};

/// One run description: scene, discretizations, windows, noise, seeds.
/// Defaults reproduce the documented reference scenario (see README and
/// default_config()).
struct SimulationConfig {
  scene::PhysicalParams physical;
  scene::Reflectivity reflectivity;
  FrequencyConfig frequency;
  imaging::GridSpec image;     ///< search grid for SAR / CINT images
  imaging::GridSpec centers;   ///< integration grid for the offset profile
  imaging::OffsetGrid offsets;
  imaging::WindowParams windows;
  forward::NoiseSpec noise;
  SeedsConfig seeds;

  /// Validates every section; also builds the frequency grid once so spacing
  /// violations surface as configuration errors up front.
  void validate() const;

  rng::StreamKey medium_key() const;
  rng::StreamKey noise_key() const;
  rng::StreamKey init_key() const;

  scene::FrequencyGrid frequency_grid() const;
};

/// The reference four-scatterer scenario: c = 1, omega_o = 2 pi (so the
/// central wavelength is the unit of length), B = omega_o / 5, L = 100,
/// a = 20, N = 60, sigma = 0.06, ell_c = L, windows X = a/5 and
/// Omega = B/5, no additive noise, scatterers at (+-2.5, 0) and (0, +-2.5).
SimulationConfig default_config();

/// Strict JSON parse.  Top-level keys: physical, reflectivity, grids,
/// windows, noise, seeds; unknown keys anywhere are rejected.  Absent keys
/// keep their defaults; a present "reflectivity" replaces the default
/// scatterer list entirely.  Throws ConfigError with a diagnostic.
SimulationConfig parse_config_text(const std::string& text);
SimulationConfig load_config(const std::filesystem::path& path);

}  // namespace sarcint::config
