#include "sarcint/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sarcint/fft.hpp"

namespace sarcint::spectral {
namespace {

int nearest_index(const VectorXd& grid, double value, double tol) {
  int best = 0;
  double dist = std::abs(grid[0] - value);
  for (int i = 1; i < grid.size(); ++i) {
    const double d = std::abs(grid[i] - value);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return dist <= tol ? best : -1;
}

/// Lattice location of the resolvable band: center bin of kappa_par = -2 k_o
/// and kappa_perp = 0, and the half-extents (in bins) of |kappa_par| <= B/c,
/// |kappa_perp| <= a k_o / L around it.
struct BandWindow {
  int ic = 0, jc = 0;
  int hp = 0, hq = 0;
  double dkp = 0.0, dkq = 0.0;
};

BandWindow locate_band(const imaging::SpectrumGrid& spec, const scene::PhysicalParams& p) {
  const double k_o = p.omega_o / p.c;
  const double band_par = p.B / p.c;
  const double band_perp = p.a * k_o / p.L;
  if (spec.kappa_par.size() < 2 || spec.kappa_perp.size() < 2) {
    throw InvalidInput("modulus_estimate: spectrum grid too small");
  }
  BandWindow b;
  b.dkp = spec.kappa_par[1] - spec.kappa_par[0];
  b.dkq = spec.kappa_perp[1] - spec.kappa_perp[0];

  b.ic = nearest_index(spec.kappa_par, -2.0 * k_o, 1e-6 * b.dkp);
  if (b.ic < 0) {
    std::ostringstream os;
    os << "modulus_estimate: the demodulation wavenumber 2 k_o = " << 2.0 * k_o
       << " does not fall on the spectral lattice (spacing " << b.dkp
       << "); choose a range offset period that is a multiple of half the carrier wavelength";
    throw ConfigError(os.str());
  }
  b.jc = nearest_index(spec.kappa_perp, 0.0, 1e-6 * std::abs(b.dkq));
  if (b.jc < 0) throw ConfigError("modulus_estimate: spectral grid has no kappa_perp = 0 bin");

  b.hp = static_cast<int>(std::floor(band_par / b.dkp + 1e-9));
  b.hq = static_cast<int>(std::floor(band_perp / b.dkq + 1e-9));
  if (b.ic - b.hp < 0 || b.ic + b.hp >= spec.kappa_par.size() || b.jc - b.hq < 0 ||
      b.jc + b.hq >= spec.kappa_perp.size()) {
    throw ConfigError(
        "modulus_estimate: spectrum does not cover the full band around -2 k_o; "
        "use a finer offset spacing");
  }
  return b;
}

ModulusTarget band_grids(const BandWindow& b) {
  ModulusTarget t;
  t.kappa_par.resize(2 * b.hp + 1);
  for (int i = -b.hp; i <= b.hp; ++i) t.kappa_par[i + b.hp] = i * b.dkp;
  t.kappa_perp.resize(2 * b.hq + 1);
  for (int j = -b.hq; j <= b.hq; ++j) t.kappa_perp[j + b.hq] = j * b.dkq;
  t.values = MatrixXd::Zero(2 * b.hp + 1, 2 * b.hq + 1);
  return t;
}

}  // namespace

ModulusTarget modulus_estimate(const imaging::SpectrumGrid& spec,
                               const scene::PhysicalParams& p) {
  p.validate();
  const double band_par = p.B / p.c;
  const double band_perp = p.a * (p.omega_o / p.c) / p.L;
  const auto b = locate_band(spec, p);

  ModulusTarget t = band_grids(b);
  for (int i = -b.hp; i <= b.hp; ++i) {
    for (int j = -b.hq; j <= b.hq; ++j) {
      const double kp = i * b.dkp, kq = j * b.dkq;
      const double envelope = std::exp(-0.5 * kq * kq / (band_perp * band_perp) -
                                       0.5 * kp * kp / (band_par * band_par));
      const double raw = spec.values(b.ic + i, b.jc + j).real() / envelope;
      t.values(i + b.hp, j + b.hq) = std::sqrt(std::max(raw, 0.0));
    }
  }
  const double peak = t.values.maxCoeff();
  if (peak > 0.0) t.values /= peak;
  return t;
}

ModulusTarget modulus_estimate(const imaging::SpectrumGrid& spec,
                               const imaging::SpectrumGrid& reference,
                               const scene::PhysicalParams& p, double ref_floor) {
  p.validate();
  if (!(ref_floor >= 0.0 && ref_floor < 1.0)) {
    throw InvalidInput("modulus_estimate: reference floor must be in [0, 1)");
  }
  const auto b = locate_band(spec, p);
  const auto br = locate_band(reference, p);
  if (std::abs(b.dkp - br.dkp) > 1e-9 * b.dkp || std::abs(b.dkq - br.dkq) > 1e-9 * b.dkq) {
    throw InvalidInput(
        "modulus_estimate: scene and reference spectra live on different lattices; "
        "compute both with the same offset grid and padding");
  }

  double ref_max = 0.0;
  for (int i = -b.hp; i <= b.hp; ++i) {
    for (int j = -b.hq; j <= b.hq; ++j) {
      ref_max = std::max(ref_max, reference.values(br.ic + i, br.jc + j).real());
    }
  }
  if (!(ref_max > 0.0)) {
    throw InvalidInput("modulus_estimate: reference spectrum is nonpositive over the band");
  }

  ModulusTarget t = band_grids(b);
  for (int i = -b.hp; i <= b.hp; ++i) {
    for (int j = -b.hq; j <= b.hq; ++j) {
      const double ref = reference.values(br.ic + i, br.jc + j).real();
      if (ref <= ref_floor * ref_max) continue;  // stays zero: no usable reference power
      const double raw = spec.values(b.ic + i, b.jc + j).real() / ref;
      t.values(i + b.hp, j + b.hq) = std::sqrt(std::max(raw, 0.0));
    }
  }
  const double peak = t.values.maxCoeff();
  if (peak > 0.0) t.values /= peak;
  return t;
}

imaging::HcintField compensate_offset_window(const imaging::HcintField& h,
                                             const imaging::WindowParams& w, double floor) {
  if (!(w.X > 0.0)) throw InvalidInput("compensate_offset_window: window X must be positive");
  if (!(floor > 0.0 && floor <= 1.0)) {
    throw InvalidInput("compensate_offset_window: floor must be in (0, 1]");
  }
  imaging::HcintField out = h;
  for (int j = 0; j < h.offsets.n_perp; ++j) {
    const double oq = h.offsets.perp_at(j);
    const double g = std::max(std::exp(-0.5 * oq * oq / (w.X * w.X)), floor);
    for (int i = 0; i < h.offsets.n_par; ++i) out.values[h.offsets.linear(i, j)] /= g;
  }
  return out;
}

imaging::HcintField deflate_central_peak(const imaging::HcintField& h, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw InvalidInput("deflate_central_peak: fraction must be in [0, 1)");
  }
  if (h.offsets.n_par % 2 == 0 || h.offsets.n_perp % 2 == 0) {
    throw InvalidInput("deflate_central_peak: offset grid must contain the zero offset");
  }
  imaging::HcintField out = h;
  out.values[h.offsets.center_linear()] *= (1.0 - fraction);
  return out;
}

RetrievalResult error_reduction_retrieve(const ModulusTarget& target,
                                         const scene::PhysicalParams& p, int iterations,
                                         double tolerance, const rng::StreamKey& init_key) {
  if (iterations < 1) throw InvalidInput("error_reduction_retrieve: need at least 1 iteration");
  if (!(tolerance >= 0.0)) throw InvalidInput("error_reduction_retrieve: bad tolerance");
  const int n1 = static_cast<int>(target.values.rows());
  const int n2 = static_cast<int>(target.values.cols());
  const MatrixXd& m = target.values;
  const double m_norm = m.norm();
  if (!(m_norm > 0.0)) {
    throw InvalidInput("error_reduction_retrieve: modulus target is identically zero");
  }
  const double dkp = target.kappa_par_spacing();
  const double dkq = target.kappa_perp_spacing();
  if (!(dkp > 0.0) || !(dkq > 0.0)) {
    throw InvalidInput("error_reduction_retrieve: degenerate modulus grid");
  }

  // The iteration runs in the demodulated frame (spectrum re-centered at
  // 2 k_o), where the physical constraint is simply "real and nonnegative";
  // the carrier modulation is restored on output.
  MatrixXcd zhat(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const auto [u, v] = rng::uniform_pair(init_key, static_cast<std::uint64_t>(i) * n2 + j);
      (void)v;
      zhat(i, j) = std::polar(m(i, j), 2.0 * kPi * u);
    }
  }

  RetrievalResult out;
  out.h_par = 2.0 * kPi / (n1 * dkp);
  out.h_perp = 2.0 * kPi / (n2 * dkq);
  out.residuals.reserve(iterations);
  const double inv_n = 1.0 / (static_cast<double>(n1) * n2);
  MatrixXd rho(n1, n2);
  for (int it = 0; it < iterations; ++it) {
    const MatrixXcd z = fft::centered_dft_2d(zhat, +1) * inv_n;
    rho = z.real().cwiseMax(0.0);
    const MatrixXcd g = fft::centered_dft_2d(rho.cast<Complex>(), -1);
    const double err = (g.cwiseAbs() - m).norm() / m_norm;
    out.residuals.push_back(err);
    ++out.iterations_run;
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        const double mag = std::abs(g(i, j));
        zhat(i, j) = mag > 0.0 ? Complex(m(i, j)) * (g(i, j) / mag) : Complex(m(i, j));
      }
    }
    if (err <= tolerance) {
      out.converged = true;
      break;
    }
  }
  out.rho_est = rho;
  out.eta.resize(n1, n2);
  const double k_o = p.omega_o / p.c;
  for (int i = 0; i < n1; ++i) {
    const double x_par = (i - n1 / 2) * out.h_par;
    const Complex mod = std::polar(1.0, 2.0 * k_o * x_par);
    for (int j = 0; j < n2; ++j) out.eta(i, j) = rho(i, j) * mod;
  }
  return out;
}

RegistrationShift register_to_cint(RetrievalResult& result, const imaging::ImageGrid& cint) {
  const MatrixXd& img = cint.values;
  const double cmax = img.maxCoeff();
  if (!(cmax > 0.0)) throw InvalidInput("register_to_cint: interferometric image is nonpositive");
  if (!(result.rho_est.maxCoeff() > 0.0)) {
    throw InvalidInput("register_to_cint: estimate is identically zero");
  }

  double cw = 0.0, cpar = 0.0, cperp = 0.0;
  for (int i = 0; i < img.rows(); ++i) {
    for (int j = 0; j < img.cols(); ++j) {
      if (img(i, j) >= 0.5 * cmax) {
        cw += img(i, j);
        cpar += img(i, j) * cint.grid.par_at(i);
        cperp += img(i, j) * cint.grid.perp_at(static_cast<int>(j));
      }
    }
  }
  cpar /= cw;
  cperp /= cw;

  const int np = static_cast<int>(result.rho_est.rows());
  const int nq = static_cast<int>(result.rho_est.cols());
  auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
  auto roll = [&wrap](auto& mat, int dp, int dq) {
    const int r = static_cast<int>(mat.rows()), c = static_cast<int>(mat.cols());
    std::remove_reference_t<decltype(mat)> tmp(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) tmp(wrap(i + dp, r), wrap(j + dq, c)) = mat(i, j);
    }
    mat = tmp;
  };

  // The estimate lives on a periodic grid, so its support may straddle the
  // boundary where a plain centroid is meaningless.  Anchor the strongest
  // cell at the grid center first, then re-center on the centroid of the
  // significant mass (>= 30% of max) a few times so the anchor choice cannot
  // bias the result, accumulating the total applied roll.
  RegistrationShift shift;
  MatrixXd work = result.rho_est;
  int ai = 0, aj = 0;
  work.maxCoeff(&ai, &aj);
  int dp = np / 2 - ai, dq = nq / 2 - aj;
  roll(work, dp, dq);
  shift.par_cells += dp;
  shift.perp_cells += dq;
  for (int pass = 0; pass < 3; ++pass) {
    const double wmax = work.maxCoeff();
    double rw = 0.0, ri = 0.0, rj = 0.0;
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < nq; ++j) {
        if (work(i, j) >= 0.3 * wmax) {
          rw += work(i, j);
          ri += work(i, j) * i;
          rj += work(i, j) * j;
        }
      }
    }
    dp = np / 2 - static_cast<int>(std::lround(ri / rw));
    dq = nq / 2 - static_cast<int>(std::lround(rj / rw));
    if (dp == 0 && dq == 0) break;
    roll(work, dp, dq);
    shift.par_cells += dp;
    shift.perp_cells += dq;
  }

  // Finally move the centered support onto the interferometric centroid.
  shift.par_cells += static_cast<int>(std::lround(cpar / result.h_par));
  shift.perp_cells += static_cast<int>(std::lround(cperp / result.h_perp));
  shift.par_cells = wrap(shift.par_cells + np / 2, np) - np / 2;
  shift.perp_cells = wrap(shift.perp_cells + nq / 2, nq) - nq / 2;

  roll(result.rho_est, shift.par_cells, shift.perp_cells);
  roll(result.eta, shift.par_cells, shift.perp_cells);
  return shift;
}

std::vector<Peak> find_peaks(const MatrixXd& values, const VectorXd& par_coords,
                             const VectorXd& perp_coords, double min_fraction) {
  if (values.rows() != par_coords.size() || values.cols() != perp_coords.size()) {
    throw InvalidInput("find_peaks: coordinate/value shape mismatch");
  }
  const double vmax = values.maxCoeff();
  std::vector<Peak> peaks;
  if (!(vmax > 0.0)) return peaks;
  const int r = static_cast<int>(values.rows()), c = static_cast<int>(values.cols());
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      const double v = values(i, j);
      if (v < min_fraction * vmax) continue;
      bool is_max = true;
      // Edge neighbors only: diagonal cells may hold peaks of their own at
      // the tightest spacing the grid represents, and must not suppress this
      // one.
      constexpr int kSteps[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
      for (const auto& step : kSteps) {
        const int ii = i + step[0], jj = j + step[1];
        if (ii < 0 || ii >= r || jj < 0 || jj >= c) continue;
        if (values(ii, jj) > v) is_max = false;
        // ties: keep the lexicographically first location
        if (values(ii, jj) == v && (ii < i || (ii == i && jj < j))) is_max = false;
        if (!is_max) break;
      }
      if (!is_max) continue;
      // Refine over the center and its edge neighbors only.  A full 3x3
      // neighborhood would fold diagonal cells into the centroid, and those
      // may belong to other peaks when features sit one cell apart.
      double w = v, sp = v * par_coords[i], sq = v * perp_coords[j];
      for (const auto& step : kSteps) {
        const int ii = i + step[0], jj = j + step[1];
        if (ii < 0 || ii >= r || jj < 0 || jj >= c) continue;
        const double u = values(ii, jj);
        w += u;
        sp += u * par_coords[ii];
        sq += u * perp_coords[jj];
      }
      peaks.push_back({sp / w, sq / w, v});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return a.value > b.value;
  });
  return peaks;
}

std::vector<Peak> find_peaks(const imaging::ImageGrid& image, double min_fraction) {
  VectorXd par(image.grid.n_par), perp(image.grid.n_perp);
  for (int i = 0; i < image.grid.n_par; ++i) par[i] = image.grid.par_at(i);
  for (int j = 0; j < image.grid.n_perp; ++j) perp[j] = image.grid.perp_at(j);
  return find_peaks(image.values, par, perp, min_fraction);
}

}  // namespace sarcint::spectral
