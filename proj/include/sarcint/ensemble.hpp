#pragma once

#include <cstdint>

#include "sarcint/common.hpp"
#include "sarcint/config.hpp"
#include "sarcint/imaging.hpp"

namespace sarcint::ensemble {

/// Imaging functional evaluated per realization on the config's image grid.
enum class Functional { kSar, kCint };

const char* functional_name(Functional f);

/// Per-pixel ensemble statistics of an imaging functional, plus the regime
/// numbers (omega_o tau and window-to-decoherence ratios) that the stability
/// predictions are phrased in.
struct EnsembleReport {
  Functional functional = Functional::kSar;
  imaging::GridSpec grid;
  int realizations = 0;
  std::uint64_t seed = 0;
  double omega_o_tau = 0.0;   ///< 0 in a homogeneous medium
  double x_ratio = 0.0;       ///< X / decoherence length (0 if no decoherence)
  double omega_ratio = 0.0;   ///< Omega / decoherence frequency
  double threshold_fraction = 1e-3;
  MatrixXd mean;
  MatrixXd variance;
  /// Coefficient of variation sqrt(var)/mean; NaN where the mean is below
  /// threshold_fraction * max(mean).
  MatrixXd cv;

  /// Coefficient of variation at the pixel where the mean peaks.
  double peak_cv() const;
  /// Row/col of the mean's maximum.
  std::pair<int, int> peak_index() const;
};

/// Runs `n_realizations` independent draws (medium stream keyed by the
/// realization index, noise stream likewise), accumulates streaming per-pixel
/// moments, and reports.  The realization loop is sequential in index order,
/// so results are bit-identical for any worker count; parallelism lives
/// inside the per-realization imaging.  Requires n_realizations >= 2.
EnsembleReport run_monte_carlo(const config::SimulationConfig& cfg, Functional functional,
                               int n_realizations);

}  // namespace sarcint::ensemble
