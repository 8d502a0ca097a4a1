#include "sarcint/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sarcint/fft.hpp"

namespace sarcint::imaging {

void WindowParams::validate() const {
  if (!(X > 0.0)) throw InvalidInput("windows: X must be positive");
  if (!(Omega > 0.0)) throw InvalidInput("windows: Omega must be positive");
  if (!(band_cutoff >= 2.0)) throw InvalidInput("windows: band_cutoff must be at least 2");
}

void GridSpec::validate() const {
  if (n_par < 1 || n_perp < 1) throw InvalidInput("grid: counts must be at least 1");
  if (n_par > 1 && !(par_max > par_min)) throw InvalidInput("grid: par_max must exceed par_min");
  if (n_perp > 1 && !(perp_max > perp_min)) {
    throw InvalidInput("grid: perp_max must exceed perp_min");
  }
}

void OffsetGrid::validate() const {
  if (n_par < 1 || n_perp < 1) throw InvalidInput("offset grid: counts must be at least 1");
  if (!(period_par > 0.0) || !(period_perp > 0.0)) {
    throw InvalidInput("offset grid: periods must be positive");
  }
}

Complex backprop_filter(double omega, const scene::PhysicalParams& p, double x_cross,
                        const Point& y) {
  const double k = omega / p.c;
  const double dx = x_cross - y.perp;
  const double d_par = p.L - y.par + dx * dx / (2.0 * p.L);
  const double amp = forward::pulse_spectrum(omega, p) / (8.0 * kPi * k * p.L);
  return amp * Complex(0.0, 1.0) * std::polar(1.0, 2.0 * k * d_par);
}

namespace {

// Shared state for backprojection: the data matrix with every per-sample
// scalar folded in, so that the field of one search point is
//   T_y(m, n) = base(m, n) * exp(-2 i k_m d_n(y)).
struct Prep {
  MatrixXcd base;                 // (freq, sensor)
  std::vector<double> k;          // nominal wavenumbers
  std::vector<double> sensor_x;   // sensor cross-range positions
  double L = 0.0;
  VectorXd gw, gx;                // window kernels, index = band distance
  int Dw = 0, Dx = 0;             // band half-widths in samples
};

std::vector<double> trapezoid(int n) {
  std::vector<double> w(n, 1.0);
  if (n > 1) w.front() = w.back() = 0.5;
  return w;
}

Prep make_prep(const forward::DataMatrix& data, const WindowParams* win) {
  const auto& p = data.params;
  const int M = data.num_freq();
  const int S = data.num_sensors();
  if (M < 1 || S < 1) throw InvalidInput("imaging: empty data matrix");
  if (static_cast<int>(data.freq.omegas.size()) != M ||
      static_cast<int>(data.aperture.positions.size()) != S) {
    throw InvalidInput("imaging: data matrix shape does not match its grids");
  }

  Prep prep;
  prep.L = p.L;
  prep.sensor_x = data.aperture.positions;
  prep.k.resize(M);
  for (int m = 0; m < M; ++m) prep.k[m] = data.freq.omegas[m] / p.c;

  const double domega = M > 1 ? data.freq.spacing() : 1.0;
  const double dx = S > 1 ? data.aperture.spacing() : 1.0;
  const auto trap_m = trapezoid(M);
  const auto trap_n = trapezoid(S);

  prep.base.resize(M, S);
  for (int n = 0; n < S; ++n) {
    const double vn = data.aperture.apodization[n] * trap_n[n] * dx;
    for (int m = 0; m < M; ++m) {
      const double wm = trap_m[m] * domega / (2.0 * kPi);
      const double scal =
          forward::pulse_spectrum(data.freq.omegas[m], p) / (8.0 * kPi * prep.k[m] * p.L);
      // The -i is conj of the filter's +i phase-quarter factor.
      prep.base(m, n) = data.values(m, n) * (wm * vn * scal) * Complex(0.0, -1.0);
    }
  }

  if (win != nullptr) {
    win->validate();
    const double dw_band = M > 1 ? domega : std::numeric_limits<double>::infinity();
    const double dx_band = S > 1 ? dx : std::numeric_limits<double>::infinity();
    prep.Dw = M > 1 ? std::min<int>(M - 1, static_cast<int>(std::floor(
                                               win->band_cutoff * win->Omega / dw_band + 1e-9)))
                    : 0;
    prep.Dx = S > 1 ? std::min<int>(S - 1, static_cast<int>(std::floor(
                                               win->band_cutoff * win->X / dx_band + 1e-9)))
                    : 0;
    prep.gw.resize(prep.Dw + 1);
    for (int d = 0; d <= prep.Dw; ++d) {
      const double u = d * domega / win->Omega;
      prep.gw[d] = std::exp(-0.5 * u * u);
    }
    prep.gx.resize(prep.Dx + 1);
    for (int d = 0; d <= prep.Dx; ++d) {
      const double u = d * dx / win->X;
      prep.gx[d] = std::exp(-0.5 * u * u);
    }
  }
  return prep;
}

// T_y into `out`; phase advanced by a per-column recurrence over frequency
// (one exp per sensor, then M complex multiplies).
void compute_field(const Prep& prep, const Point& y, MatrixXcd& out) {
  const int M = static_cast<int>(prep.base.rows());
  const int S = static_cast<int>(prep.base.cols());
  out.resize(M, S);
  const double dk = M > 1 ? prep.k[1] - prep.k[0] : 0.0;
  for (int n = 0; n < S; ++n) {
    const double dxs = prep.sensor_x[n] - y.perp;
    const double d = prep.L - y.par + dxs * dxs / (2.0 * prep.L);
    Complex phase = std::polar(1.0, -2.0 * prep.k[0] * d);
    const Complex step = std::polar(1.0, -2.0 * dk * d);
    for (int m = 0; m < M; ++m) {
      out(m, n) = prep.base(m, n) * phase;
      phase *= step;
    }
  }
}

// U = (window convolution of T): Gaussian weights over frequency then sensor
// distance, truncated at the band.
void convolve_window(const Prep& prep, const MatrixXcd& t, MatrixXcd& u1, MatrixXcd& u) {
  const Eigen::Index M = t.rows(), S = t.cols();
  u1 = prep.gw[0] * t;
  for (int d = 1; d <= prep.Dw; ++d) {
    u1.topRows(M - d) += prep.gw[d] * t.bottomRows(M - d);
    u1.bottomRows(M - d) += prep.gw[d] * t.topRows(M - d);
  }
  u = prep.gx[0] * u1;
  for (int d = 1; d <= prep.Dx; ++d) {
    u.leftCols(S - d) += prep.gx[d] * u1.rightCols(S - d);
    u.rightCols(S - d) += prep.gx[d] * u1.leftCols(S - d);
  }
}

struct Scratch {
  MatrixXcd a, b, u1, u;
};

// I(y, yp): inner product of T_y against the window-smoothed T_yp.
Complex pair_value(const Prep& prep, const Point& y, const Point& yp, Scratch& s) {
  compute_field(prep, y, s.a);
  if (y.par == yp.par && y.perp == yp.perp) {
    convolve_window(prep, s.a, s.u1, s.u);
  } else {
    compute_field(prep, yp, s.b);
    convolve_window(prep, s.b, s.u1, s.u);
  }
  return s.a.conjugate().cwiseProduct(s.u).sum();
}

}  // namespace

ImageGrid sar_image(const forward::DataMatrix& data, const GridSpec& grid) {
  grid.validate();
  const Prep prep = make_prep(data, nullptr);
  ImageGrid img;
  img.grid = grid;
  img.values.resize(grid.n_par, grid.n_perp);
  const int total = grid.count();
#pragma omp parallel
  {
    MatrixXcd t;
#pragma omp for schedule(static)
    for (int idx = 0; idx < total; ++idx) {
      const int i = idx / grid.n_perp, j = idx % grid.n_perp;
      compute_field(prep, grid.at(i, j), t);
      const Complex amp = t.sum();
      img.values(i, j) = std::norm(amp);
    }
  }
  return img;
}

ImageGrid cint_image(const forward::DataMatrix& data, const GridSpec& grid,
                     const WindowParams& w) {
  grid.validate();
  const Prep prep = make_prep(data, &w);
  ImageGrid img;
  img.grid = grid;
  img.values.resize(grid.n_par, grid.n_perp);
  const int total = grid.count();
#pragma omp parallel
  {
    Scratch s;
#pragma omp for schedule(static)
    for (int idx = 0; idx < total; ++idx) {
      const int i = idx / grid.n_perp, j = idx % grid.n_perp;
      const Point y = grid.at(i, j);
      const double v = pair_value(prep, y, y, s).real();
      img.values(i, j) = std::max(v, 0.0);  // band truncation can leave tiny negatives
    }
  }
  return img;
}

TwoPointField two_point_cint(const forward::DataMatrix& data, const GridSpec& centers,
                             const OffsetGrid& offsets, const WindowParams& w) {
  centers.validate();
  offsets.validate();
  if (offsets.n_par % 2 == 0 || offsets.n_perp % 2 == 0) {
    throw InvalidInput("two_point_cint: offset counts must be odd (grid symmetric about 0)");
  }
  const Prep prep = make_prep(data, &w);

  // One task per offset in the closed upper half; the mirrored offset is
  // filled by conjugation (the field is Hermitian under o -> -o).
  std::vector<std::pair<int, int>> half;
  for (int i = 0; i < offsets.n_par; ++i) {
    for (int j = 0; j < offsets.n_perp; ++j) {
      const int lin = offsets.linear(i, j);
      const int mirror = offsets.linear(offsets.n_par - 1 - i, offsets.n_perp - 1 - j);
      if (lin <= mirror) half.emplace_back(lin, mirror);
    }
  }

  TwoPointField field;
  field.centers = centers;
  field.offsets = offsets;
  field.values.resize(centers.count(), offsets.count());
  const int n_half = static_cast<int>(half.size());
  const long long total = static_cast<long long>(centers.count()) * n_half;
#pragma omp parallel
  {
    Scratch s;
#pragma omp for schedule(static)
    for (long long task = 0; task < total; ++task) {
      const int c = static_cast<int>(task / n_half);
      const auto [lin, mirror] = half[static_cast<int>(task % n_half)];
      const int oi = lin / offsets.n_perp, oj = lin % offsets.n_perp;
      const Point center = centers.at(c / centers.n_perp, c % centers.n_perp);
      const double opar = offsets.par_at(oi), operp = offsets.perp_at(oj);
      const Point y{center.par + 0.5 * opar, center.perp + 0.5 * operp};
      const Point yp{center.par - 0.5 * opar, center.perp - 0.5 * operp};
      Complex v = pair_value(prep, y, yp, s);
      if (lin == mirror) v = Complex(v.real(), 0.0);  // zero offset: real by symmetry
      field.values(c, lin) = v;
      if (mirror != lin) field.values(c, mirror) = std::conj(v);
    }
  }
  return field;
}

HcintField hcint_field(const TwoPointField& field) {
  const auto& g = field.centers;
  VectorXd wgt(g.count());
  const auto wp = trapezoid(g.n_par);
  const auto wq = trapezoid(g.n_perp);
  const double cell_par = g.n_par > 1 ? g.par_spacing() : 1.0;
  const double cell_perp = g.n_perp > 1 ? g.perp_spacing() : 1.0;
  for (int i = 0; i < g.n_par; ++i) {
    for (int j = 0; j < g.n_perp; ++j) {
      wgt[i * g.n_perp + j] = wp[i] * wq[j] * cell_par * cell_perp;
    }
  }
  HcintField h;
  h.offsets = field.offsets;
  h.values = field.values.transpose() * wgt.cast<Complex>();
  return h;
}

HcintField pad_offsets(const HcintField& h, int factor) {
  if (factor < 1) throw InvalidInput("pad_offsets: factor must be at least 1");
  if (factor == 1) return h;
  const auto& g = h.offsets;
  HcintField out;
  out.offsets = g;
  out.offsets.n_par = g.n_par * factor;
  out.offsets.n_perp = g.n_perp * factor;
  out.offsets.period_par = g.period_par * factor;
  out.offsets.period_perp = g.period_perp * factor;
  out.values = VectorXcd::Zero(out.offsets.count());
  const int dpi = out.offsets.center_par() - g.center_par();
  const int dpj = out.offsets.center_perp() - g.center_perp();
  for (int i = 0; i < g.n_par; ++i) {
    for (int j = 0; j < g.n_perp; ++j) {
      out.values[out.offsets.linear(i + dpi, j + dpj)] = h.values[g.linear(i, j)];
    }
  }
  return out;
}

SpectrumGrid hcint_spectrum(const HcintField& h) {
  const auto& g = h.offsets;
  g.validate();
  if (h.values.size() != g.count()) throw InvalidInput("hcint_spectrum: value/grid size mismatch");
  MatrixXcd v(g.n_par, g.n_perp);
  for (int i = 0; i < g.n_par; ++i) {
    for (int j = 0; j < g.n_perp; ++j) v(i, j) = h.values[g.linear(i, j)];
  }
  SpectrumGrid s;
  s.values = fft::centered_dft_2d(v, -1) * (g.par_spacing() * g.perp_spacing());
  s.kappa_par.resize(g.n_par);
  for (int q = 0; q < g.n_par; ++q) {
    s.kappa_par[q] = 2.0 * kPi * (q - g.center_par()) / g.period_par;
  }
  s.kappa_perp.resize(g.n_perp);
  for (int q = 0; q < g.n_perp; ++q) {
    s.kappa_perp[q] = 2.0 * kPi * (q - g.center_perp()) / g.period_perp;
  }
  return s;
}

SpectrumGrid hcint_spectrum(const VectorXcd& values, const std::vector<double>& par_coords,
                            const std::vector<double>& perp_coords) {
  auto infer = [](const std::vector<double>& c, const char* axis) {
    const int n = static_cast<int>(c.size());
    if (n < 1) throw InvalidInput("hcint_spectrum: empty coordinate list");
    double spacing = n > 1 ? (c.back() - c.front()) / (n - 1) : 1.0;
    if (n > 1 && !(spacing > 0.0)) {
      throw InvalidInput(std::string("hcint_spectrum: ") + axis + " coordinates must increase");
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(spacing));
    for (int i = 0; i < n; ++i) {
      if (std::abs(c[i] - (c.front() + i * spacing)) > tol) {
        throw InvalidInput(std::string("hcint_spectrum: ") + axis +
                           " offsets are not on a uniform grid");
      }
    }
    const int center = n / 2;
    if (std::abs(c[center]) > tol) {
      throw InvalidInput(std::string("hcint_spectrum: ") + axis +
                         " offset grid is not centered on 0");
    }
    return spacing;
  };
  const double dp = infer(par_coords, "range");
  const double dq = infer(perp_coords, "cross-range");
  HcintField h;
  h.offsets.n_par = static_cast<int>(par_coords.size());
  h.offsets.n_perp = static_cast<int>(perp_coords.size());
  h.offsets.period_par = dp * h.offsets.n_par;
  h.offsets.period_perp = dq * h.offsets.n_perp;
  h.values = values;
  return hcint_spectrum(h);
}

}  // namespace sarcint::imaging
