#pragma once

#include "sarcint/common.hpp"
#include "sarcint/forward.hpp"
#include "sarcint/scene.hpp"

namespace sarcint::imaging {
struct WindowParams;  // defined in imaging.hpp
}

namespace sarcint::theory {

/// Aperture/bandwidth/window scales after medium blur.  The medium shrinks
/// the usable aperture and bandwidth (a_tilde, B_tilde) and the
/// interferometric windows combine with them into X_tilde, Omega_tilde.
/// Homogeneous medium: a_tilde = a, B_tilde = B.
struct EffectiveParams {
  double a_tilde = 0.0;
  double B_tilde = 0.0;
  double X_tilde = 0.0;
  double Omega_tilde = 0.0;
};

EffectiveParams effective_params(const scene::PhysicalParams& p, const scene::DerivedScales& d,
                                 const imaging::WindowParams& w);

/// Matched-filter point-spread kernel for aperture parameter `a_param` and
/// bandwidth `B_param` (pass the effective values for a random medium):
///   pi a B exp[- y_perp^2 / (L/(k_o a))^2 - y_par^2 / (c/B)^2 - 2 i k_o y_par].
/// The image of a point scatterer is proportional to |kernel|^2; widths and
/// shapes are meaningful, the global constant is not asserted anywhere.
Complex sar_kernel(const Point& y, double a_param, double B_param,
                   const scene::PhysicalParams& p);

/// Interferometric center-blur kernel (real, positive):
///   pi X_t Om_t exp[- 2 y_perp^2 / (L/(k_o X_t))^2 - 2 y_par^2 / (c/Om_t)^2].
double cint_kernel_center(const Point& y, double X_tilde, double Omega_tilde,
                          const scene::PhysicalParams& p);

/// Interferometric offset kernel:
///   pi a B exp[- y_perp^2 / (2 (L/(k_o a))^2) - y_par^2 / (2 (c/B)^2) - 2 i k_o y_par].
Complex cint_kernel_offset(const Point& y, const scene::PhysicalParams& p);

/// Native resolutions of the matched filter.
struct SarWidths {
  double range = 0.0;  ///< c/B: e^{-1} half-width of |kernel| in range
  double cross = 0.0;  ///< L/(k_o a): same in cross-range
};
SarWidths predicted_sar_widths(const scene::PhysicalParams& p);

/// Blur widths of the interferometric image of a point:
/// range c/Omega_tilde, cross L/(k_o X_tilde), both e^{-2} half-widths of the
/// (linear) center kernel.
SarWidths predicted_cint_widths(const EffectiveParams& eff, const scene::PhysicalParams& p);

/// Mean peak amplitude reduction of the matched-filter image caused by the
/// medium: (a_tilde/a)^2 (B_tilde/B)^2.
double peak_reduction_factor(const scene::PhysicalParams& p, const scene::DerivedScales& d);

/// Relative fluctuation scale of the windowed interferometric image,
/// sqrt(X^2/X_d^2 + Omega^2/Omega_d^2); the matched-filter image has
/// variation coefficient 1 in the strongly fluctuating regime.
double cint_variation_scale(const imaging::WindowParams& w, const scene::DerivedScales& d);

/// Additive-noise contributions to the images.
struct NoiseFloor {
  double c_w = 0.0;            ///< mean noise level of the matched-filter image
  double range_radius = 0.0;   ///< speckle covariance e^{-2} radius in range: c/B
  double cross_radius = 0.0;   ///< speckle covariance e^{-1} radius in cross-range: L/(k_o a)
  double hcint_range_width = 0.0;  ///< e^{-1} full width in kappa_par of the noise
                                   ///< peak in the offset spectrum: 2 B / c
  double hcint_cross_std = 0.0;    ///< Gaussian std in kappa_perp: a k_o / L
};
NoiseFloor noise_floor(const scene::PhysicalParams& p);

/// Normalized speckle covariance of the matched-filter image of pure noise at
/// pixel separation dy: exp[- 2 dy_par^2/(c/B)^2 - dy_perp^2/(L/(k_o a))^2].
double normalized_noise_covariance(const Point& dy, const scene::PhysicalParams& p);

}  // namespace sarcint::theory
