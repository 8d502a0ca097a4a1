#pragma once

#include <vector>

#include "sarcint/common.hpp"
#include "sarcint/imaging.hpp"
#include "sarcint/rng.hpp"

namespace sarcint::spectral {

/// |rho_hat| samples over the resolvable band, on the spectral grid shifted
/// so the demodulation wavenumber 2 k_o is the origin.  kappa grids are
/// symmetric about 0 (|kappa_par| <= B/c, |kappa_perp| <= a k_o / L) and the
/// values are normalized to unit maximum.
struct ModulusTarget {
  VectorXd kappa_par, kappa_perp;
  MatrixXd values;

  double kappa_par_spacing() const {
    return kappa_par.size() > 1 ? kappa_par[1] - kappa_par[0] : 0.0;
  }
  double kappa_perp_spacing() const {
    return kappa_perp.size() > 1 ? kappa_perp[1] - kappa_perp[0] : 0.0;
  }
};

/// Reads the reflectivity modulus off the offset spectrum: divides out the
/// Gaussian band envelope around kappa_par = -2 k_o, clamps negative values
/// to zero and takes the square root.  Requires 2 k_o to lie on the spectral
/// lattice (offset period in range a multiple of half the carrier
/// wavelength); throws ConfigError otherwise.
ModulusTarget modulus_estimate(const imaging::SpectrumGrid& spec,
                               const scene::PhysicalParams& p);

/// Same band extraction, but the envelope is read off a measured reference
/// spectrum -- the same acquisition and imaging chain run on a unit point
/// scatterer at the origin -- instead of the leading-order Gaussian.  The
/// ratio of real parts divides out everything the instrument does to a
/// point (window attenuation, aperture edge taper, finite center coverage),
/// not just the nominal band shape.  Bins where the reference drops below
/// ref_floor of its in-band peak carry no usable information and are set to
/// zero.  Both spectra must live on the same lattice.
ModulusTarget modulus_estimate(const imaging::SpectrumGrid& spec,
                               const imaging::SpectrumGrid& reference,
                               const scene::PhysicalParams& p, double ref_floor = 0.02);

/// Divides the offset profile by the cross-range lag response of the sensor
/// window, max(exp(-o_perp^2 / (2 X^2)), floor): image pairs a cross-range
/// offset o_perp apart are dominated by sensor pairs about o_perp apart,
/// which the X window down-weights by exactly this Gaussian.  The floor
/// keeps far lags -- where the profile is mostly leakage -- from being
/// amplified into fake structure.
imaging::HcintField compensate_offset_window(const imaging::HcintField& h,
                                             const imaging::WindowParams& w,
                                             double floor = 0.4);

/// Scales the zero-offset sample by (1 - fraction); used to remove the
/// additive-noise enhancement that piles up at offset zero.
imaging::HcintField deflate_central_peak(const imaging::HcintField& h, double fraction);

/// Result of the iterative phase retrieval.  The estimate lives on the
/// centered spatial grid dual to the modulus band: cell h_par x h_perp,
/// coordinate (index - floor(n/2)) * cell.
struct RetrievalResult {
  MatrixXd rho_est;             ///< nonnegative demodulated reflectivity estimate
  MatrixXcd eta;                ///< modulated field rho_est * exp(2 i k_o x_par)
  std::vector<double> residuals;  ///< Fourier-domain error per iteration
  int iterations_run = 0;
  bool converged = false;
  double h_par = 0.0, h_perp = 0.0;

  double x_par_at(int i) const { return (i - static_cast<int>(rho_est.rows()) / 2) * h_par; }
  double x_perp_at(int j) const { return (j - static_cast<int>(rho_est.cols()) / 2) * h_perp; }
};

/// Error-reduction iteration with a positivity constraint: alternate between
/// imposing the measured Fourier modulus (keeping phases) and clamping the
/// demodulated spatial field to be real and nonnegative.  The Fourier
/// residual ||(|G| - m)|| / ||m|| is recorded every iteration and is
/// guaranteed nonincreasing.  Initial phases are drawn from `init_key`.
RetrievalResult error_reduction_retrieve(const ModulusTarget& target,
                                         const scene::PhysicalParams& p, int iterations,
                                         double tolerance, const rng::StreamKey& init_key);

/// Translates the estimate (circularly, by whole cells) so the centroid of
/// its significant mass matches the centroid of the interferometric image
/// above half maximum.  Because the estimate's grid is periodic and the
/// support may straddle the boundary, the centroid is found by anchoring the
/// strongest cell at the grid center and re-centering on the >= 30% mass.
/// The reflection ambiguity is left alone.  Returns the applied shift in
/// cells.
struct RegistrationShift {
  int par_cells = 0;
  int perp_cells = 0;
};
RegistrationShift register_to_cint(RetrievalResult& result, const imaging::ImageGrid& cint);

/// A local maximum of an image.
struct Peak {
  double par = 0.0;
  double perp = 0.0;
  double value = 0.0;
};

/// Edge-neighborhood (4-connected) local maxima at or above min_fraction of
/// the global max, strongest first; positions refined by a center of mass
/// over the cell and its four edge neighbors.  The edge neighborhood is
/// deliberate on both counts: peaks one diagonal cell apart -- the closest
/// spacing the retrieval grid can represent -- are each reported, where an
/// 8-connected test would suppress one of every pair, and a 3x3 centroid
/// would fold each such peak's mass into its neighbor's position.
std::vector<Peak> find_peaks(const MatrixXd& values, const VectorXd& par_coords,
                             const VectorXd& perp_coords, double min_fraction);
std::vector<Peak> find_peaks(const imaging::ImageGrid& image, double min_fraction);

}  // namespace sarcint::spectral
