#include "sarcint/theory.hpp"

#include <cmath>

#include "sarcint/imaging.hpp"

namespace sarcint::theory {
namespace {

// 1/sqrt(sum of inverse squares); infinite inputs simply drop out.
double combine(std::initializer_list<double> scales) {
  double s = 0.0;
  for (double v : scales) {
    if (std::isfinite(v)) s += 1.0 / (v * v);
  }
  return s > 0.0 ? 1.0 / std::sqrt(s) : std::numeric_limits<double>::infinity();
}

}  // namespace

EffectiveParams effective_params(const scene::PhysicalParams& p, const scene::DerivedScales& d,
                                 const imaging::WindowParams& w) {
  EffectiveParams e;
  e.a_tilde = combine({p.a, d.decoherence_length});
  e.B_tilde = combine({p.B, d.decoherence_frequency});
  e.X_tilde = combine({p.a, w.X, d.decoherence_length});
  e.Omega_tilde = combine({p.B, w.Omega, d.decoherence_frequency});
  return e;
}

Complex sar_kernel(const Point& y, double a_param, double B_param,
                   const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  const double wc = p.L / (k_o * a_param);
  const double wr = p.c / B_param;
  const double amp = kPi * a_param * B_param *
                     std::exp(-y.perp * y.perp / (wc * wc) - y.par * y.par / (wr * wr));
  return std::polar(amp, -2.0 * k_o * y.par);
}

double cint_kernel_center(const Point& y, double X_tilde, double Omega_tilde,
                          const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  const double wc = p.L / (k_o * X_tilde);
  const double wr = p.c / Omega_tilde;
  return kPi * X_tilde * Omega_tilde *
         std::exp(-2.0 * y.perp * y.perp / (wc * wc) - 2.0 * y.par * y.par / (wr * wr));
}

Complex cint_kernel_offset(const Point& y, const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  const double wc = p.L / (k_o * p.a);
  const double wr = p.c / p.B;
  const double amp =
      kPi * p.a * p.B *
      std::exp(-0.5 * y.perp * y.perp / (wc * wc) - 0.5 * y.par * y.par / (wr * wr));
  return std::polar(amp, -2.0 * k_o * y.par);
}

SarWidths predicted_sar_widths(const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  return {p.c / p.B, p.L / (k_o * p.a)};
}

SarWidths predicted_cint_widths(const EffectiveParams& eff, const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  return {p.c / eff.Omega_tilde, p.L / (k_o * eff.X_tilde)};
}

double peak_reduction_factor(const scene::PhysicalParams& p, const scene::DerivedScales& d) {
  const double ar = combine({p.a, d.decoherence_length}) / p.a;
  const double br = combine({p.B, d.decoherence_frequency}) / p.B;
  return ar * ar * br * br;
}

double cint_variation_scale(const imaging::WindowParams& w, const scene::DerivedScales& d) {
  if (!d.has_decoherence()) return 0.0;
  const double xr = w.X / d.decoherence_length;
  const double wr = w.Omega / d.decoherence_frequency;
  return std::sqrt(xr * xr + wr * wr);
}

NoiseFloor noise_floor(const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  NoiseFloor f;
  f.c_w = p.sigma_w * p.sigma_w * p.a * p.B /
          (std::pow(2.0, 8.5) * kPi * kPi * kPi * k_o * k_o * p.L * p.L);
  f.range_radius = p.c / p.B;
  f.cross_radius = p.L / (k_o * p.a);
  f.hcint_range_width = 2.0 * p.B / p.c;
  f.hcint_cross_std = p.a * k_o / p.L;
  return f;
}

double normalized_noise_covariance(const Point& dy, const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  const double wr = p.c / p.B;
  const double wc = p.L / (k_o * p.a);
  return std::exp(-2.0 * dy.par * dy.par / (wr * wr) - dy.perp * dy.perp / (wc * wc));
}

}  // namespace sarcint::theory
