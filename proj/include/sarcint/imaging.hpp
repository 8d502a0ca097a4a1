#pragma once

#include <vector>

#include "sarcint/common.hpp"
#include "sarcint/forward.hpp"

namespace sarcint::imaging {

/// Interferometric smoothing windows: pairs of samples further apart than X
/// in sensor position or Omega in frequency are down-weighted by a Gaussian
/// and dropped entirely beyond band_cutoff standard widths.
struct WindowParams {
  double X = 0.0;
  double Omega = 0.0;
  double band_cutoff = 3.0;

  void validate() const;
};

/// Uniform rectangular grid of search points, `par` (range) major.
struct GridSpec {
  double par_min = 0.0, par_max = 0.0;
  int n_par = 1;
  double perp_min = 0.0, perp_max = 0.0;
  int n_perp = 1;

  void validate() const;
  int count() const { return n_par * n_perp; }
  double par_at(int i) const {
    return n_par > 1 ? par_min + i * (par_max - par_min) / (n_par - 1) : par_min;
  }
  double perp_at(int j) const {
    return n_perp > 1 ? perp_min + j * (perp_max - perp_min) / (n_perp - 1) : perp_min;
  }
  double par_spacing() const { return n_par > 1 ? (par_max - par_min) / (n_par - 1) : 0.0; }
  double perp_spacing() const { return n_perp > 1 ? (perp_max - perp_min) / (n_perp - 1) : 0.0; }
  Point at(int i, int j) const { return {par_at(i), perp_at(j)}; }
};

/// Real-valued image sampled on a GridSpec; values(i, j) at (par_i, perp_j).
struct ImageGrid {
  GridSpec grid;
  MatrixXd values;
};

/// Uniform grid of two-point offsets centered on 0.  Defined by the sample
/// count and the implied periodization length per axis (period = count *
/// spacing), which is what the offset spectrum inherits as 2 pi / period
/// resolution.  Odd counts place 0 exactly on the grid; even counts arise
/// only from zero-padding and keep 0 at index count/2.
struct OffsetGrid {
  int n_par = 1, n_perp = 1;
  double period_par = 0.0, period_perp = 0.0;

  void validate() const;
  int count() const { return n_par * n_perp; }
  double par_spacing() const { return period_par / n_par; }
  double perp_spacing() const { return period_perp / n_perp; }
  int center_par() const { return n_par / 2; }
  int center_perp() const { return n_perp / 2; }
  double par_at(int i) const { return (i - center_par()) * par_spacing(); }
  double perp_at(int j) const { return (j - center_perp()) * perp_spacing(); }
  /// Linear index, par-major.
  int linear(int i, int j) const { return i * n_perp + j; }
  int center_linear() const { return linear(center_par(), center_perp()); }
};

/// I(c + o/2, c - o/2) for every center c and offset o.
/// values(center, offset) with centers/offsets in their linear orders.
/// Hermitian by construction: value at -o is the conjugate of the value at o.
struct TwoPointField {
  GridSpec centers;
  OffsetGrid offsets;
  MatrixXcd values;
};

/// Offset profile after integrating the two-point field over centers.
struct HcintField {
  OffsetGrid offsets;
  VectorXcd values;
};

/// Fourier transform of the offset profile on the dual grid.
struct SpectrumGrid {
  VectorXd kappa_par, kappa_perp;
  MatrixXcd values;  ///< (kappa_par index, kappa_perp index)
};

/// Matched filter evaluated with the paraxial phase and the amplitude frozen
/// at range L: pulse(omega) * exp(2 i k d_par + i pi/2) / (8 pi k L) with
/// d_par = L - y_par + (x_cross - y_perp)^2 / (2 L).
Complex backprop_filter(double omega, const scene::PhysicalParams& p, double x_cross,
                        const Point& y);

/// Matched-filter (synthetic aperture) image: the squared modulus of the
/// backprojected amplitude
///   (1/2pi) sum_m sum_n dw_m R(m,n) conj(filter) w_n dx_n,
/// with trapezoid quadrature weights on both sums.
ImageGrid sar_image(const forward::DataMatrix& data, const GridSpec& grid);

/// Windowed interferometric image (diagonal of the two-point field, real,
/// clamped at 0).  Shares the pair-evaluation code path with two_point_cint.
ImageGrid cint_image(const forward::DataMatrix& data, const GridSpec& grid,
                     const WindowParams& w);

/// Banded two-point interferometric field.  The window truncation keeps the
/// sample-pair set {|dx| <= cutoff X and |domega| <= cutoff Omega}; within the
/// band the quadruple sum is evaluated as a separable Gaussian convolution
/// over the filtered data followed by an inner product, which is exactly the
/// banded sum reordered.
TwoPointField two_point_cint(const forward::DataMatrix& data, const GridSpec& centers,
                             const OffsetGrid& offsets, const WindowParams& w);

/// Trapezoid quadrature of the two-point field over centers.
HcintField hcint_field(const TwoPointField& field);

/// Extends the offset grid `factor`-fold per axis with zeros (spacing kept,
/// period multiplied), refining the spectral grid below.
HcintField pad_offsets(const HcintField& h, int factor);

/// Offset spectrum: cell-area-scaled DFT sum_o H(o) exp(-i kappa . o) on the
/// centered dual grid kappa = 2 pi j / period.
SpectrumGrid hcint_spectrum(const HcintField& h);

/// Same, for externally supplied offset coordinates; throws InvalidInput if
/// they do not form a uniform centered grid.
SpectrumGrid hcint_spectrum(const VectorXcd& values, const std::vector<double>& par_coords,
                            const std::vector<double>& perp_coords);

}  // namespace sarcint::imaging
