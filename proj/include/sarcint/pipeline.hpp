#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "sarcint/config.hpp"
#include "sarcint/ensemble.hpp"
#include "sarcint/spectral.hpp"

namespace sarcint::pipeline {

/// Knobs of the retrieval stage (CLI flags map onto these 1:1).
struct RetrieveOptions {
  double deflate_fraction = 0.0;  ///< scale the zero-offset sample by 1 - f first
  int iterations = 1000;
  double tolerance = 1e-4;
  std::optional<std::uint64_t> init_seed;  ///< overrides the config's global seed
                                           ///< for the phase-initialization draw
  int pad_factor = 2;  ///< offset zero-padding before the spectrum
  std::string register_cint;  ///< image base to register the estimate against ("" = off)
  /// Offset-profile base of a point-scatterer reference run with the same
  /// grids and windows ("" = none).  When set, both profiles are divided by
  /// the sensor window's cross-range lag response (floored at window_floor)
  /// and the modulus is calibrated by the measured reference spectrum
  /// instead of the analytic band envelope.
  std::string reference;
  double window_floor = 0.4;
};

/// Explicit value, else $SARCINT_OUT_DIR, else the current directory.  The
/// directory is created if missing.
std::filesystem::path resolve_out_dir(const std::string& cli_value);

/// The documented reference scenario with the medium on (sigma = 0.06) or
/// off, and additive noise given as a percentage of the strongest return.
config::SimulationConfig make_reference_config(double noise_percent, bool strong_medium);

/// Synthesizes one data set; writes <out>/data.{bin,json} and
/// <out>/travel_times.csv.  Regime warnings go to `log`.
void run_simulate(const config::SimulationConfig& cfg, const std::filesystem::path& out,
                  std::ostream& log);

/// Forms all four imaging products from a stored data set: sar, cint
/// (both on the image grid), two_point (centers x offsets), hcint (offset
/// profile, plus a quick-look modulus map over offsets).
void run_image(const config::SimulationConfig& cfg, const std::filesystem::path& data_base,
               const std::filesystem::path& out, std::ostream& log);

/// Offset profile -> spectrum -> modulus -> phase retrieval.  Writes
/// spectrum, estimate (raw + csv + pgm) and estimate_peaks.csv; with
/// deflation also hcint_deflated, and with a reference also
/// hcint_compensated and spectrum_reference.  Returns the retrieval result.
spectral::RetrievalResult run_retrieve(const config::SimulationConfig& cfg,
                                       const std::filesystem::path& hcint_base,
                                       const RetrieveOptions& opt,
                                       const std::filesystem::path& out, std::ostream& log);

/// Monte Carlo per-pixel statistics for the requested functionals; writes
/// stats_<name>_{mean,variance,cv} and prints a summary table.
void run_stats(const config::SimulationConfig& cfg, bool do_sar, bool do_cint, int realizations,
               const std::filesystem::path& out, std::ostream& log);

/// Prints predicted-vs-measured resolution widths, variation coefficients
/// and additive-noise speckle radii for the config's scenario.
void run_theory_check(const config::SimulationConfig& cfg, std::ostream& log);

/// End-to-end recipes for the four reference-figure scenarios:
///   2  the scatterer model (raster + csv)
///   3  no medium, no noise: simulate + image + retrieve
///   4  strong medium, 20% noise: same chain
///   5  strong medium, 40% noise: same chain, plus a deflated variant
///      (fraction from `opt`, defaulting to 0.2)
/// Figures 3-5 also run the chain on a unit point scatterer (homogeneous,
/// noiseless, same grids) under <out>/reference and calibrate the retrieval
/// against it, and register the estimate to the interferometric image;
/// explicit `opt` values for either override the recipe.
void run_reproduce_figure(int figure, std::optional<std::uint64_t> seed,
                          const RetrieveOptions& opt, const std::filesystem::path& out,
                          std::ostream& log);

}  // namespace sarcint::pipeline
