#include "sarcint/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sarcint/forward.hpp"
#include "sarcint/io.hpp"
#include "sarcint/measure.hpp"
#include "sarcint/medium.hpp"
#include "sarcint/stats.hpp"
#include "sarcint/theory.hpp"

namespace sarcint::pipeline {
namespace {

namespace fs = std::filesystem;

/// Quick-look view of an offset-indexed complex field as a modulus image.
imaging::ImageGrid offsets_modulus_map(const imaging::OffsetGrid& offsets,
                                       const VectorXcd& values) {
  imaging::ImageGrid img;
  img.grid = {offsets.par_at(0), offsets.par_at(offsets.n_par - 1), offsets.n_par,
              offsets.perp_at(0), offsets.perp_at(offsets.n_perp - 1), offsets.n_perp};
  img.values.resize(offsets.n_par, offsets.n_perp);
  for (int i = 0; i < offsets.n_par; ++i) {
    for (int j = 0; j < offsets.n_perp; ++j) {
      img.values(i, j) = std::abs(values[offsets.linear(i, j)]);
    }
  }
  return img;
}

imaging::ImageGrid estimate_as_image(const spectral::RetrievalResult& r) {
  const int np = static_cast<int>(r.rho_est.rows());
  const int nq = static_cast<int>(r.rho_est.cols());
  imaging::ImageGrid img;
  img.grid = {r.x_par_at(0), r.x_par_at(np - 1), np, r.x_perp_at(0), r.x_perp_at(nq - 1), nq};
  img.values = r.rho_est;
  return img;
}

void save_quicklooks(const fs::path& out, const std::string& name,
                     const imaging::ImageGrid& img) {
  io::save_image_csv(out / (name + ".csv"), img);
  io::save_image_pgm(out / (name + ".pgm"), img);
}

void print_row(std::ostream& log, const std::string& name, double predicted, double measured) {
  std::ostringstream os;
  os << "  " << std::left << std::setw(44) << name << std::right << std::setw(12)
     << std::setprecision(5) << predicted << std::setw(12) << std::setprecision(5) << measured;
  if (predicted != 0.0 && std::isfinite(measured)) {
    os << std::setw(10) << std::setprecision(3) << measured / predicted;
  }
  log << os.str() << "\n";
}

spectral::RetrievalResult retrieve_impl(const config::SimulationConfig& cfg,
                                        const fs::path& hcint_base, const RetrieveOptions& opt,
                                        const fs::path& out, std::ostream& log,
                                        const std::string& suffix) {
  auto h = io::load_hcint(hcint_base);
  if (opt.deflate_fraction > 0.0) {
    h = spectral::deflate_central_peak(h, opt.deflate_fraction);
    io::save_hcint(out / ("hcint_deflated" + suffix), h);
    log << "deflated the zero-offset sample by " << opt.deflate_fraction * 100 << "%\n";
  }
  const bool calibrated = !opt.reference.empty();
  if (calibrated) {
    h = spectral::compensate_offset_window(h, cfg.windows, opt.window_floor);
    io::save_hcint(out / ("hcint_compensated" + suffix), h);
  }
  const auto padded = opt.pad_factor > 1 ? imaging::pad_offsets(h, opt.pad_factor) : h;
  const auto spectrum = imaging::hcint_spectrum(padded);
  io::save_spectrum(out / ("spectrum" + suffix), spectrum);

  spectral::ModulusTarget target;
  if (calibrated) {
    auto ref = spectral::compensate_offset_window(io::load_hcint(opt.reference), cfg.windows,
                                                  opt.window_floor);
    const auto ref_padded = opt.pad_factor > 1 ? imaging::pad_offsets(ref, opt.pad_factor) : ref;
    const auto ref_spectrum = imaging::hcint_spectrum(ref_padded);
    io::save_spectrum(out / ("spectrum_reference" + suffix), ref_spectrum);
    target = spectral::modulus_estimate(spectrum, ref_spectrum, cfg.physical);
    log << "modulus calibrated by the point-scatterer reference " << opt.reference << "\n";
  } else {
    target = spectral::modulus_estimate(spectrum, cfg.physical);
  }
  const rng::StreamKey init_key{opt.init_seed.value_or(cfg.seeds.global), rng::kStreamPhaseInit,
                                cfg.seeds.init};
  auto result = spectral::error_reduction_retrieve(target, cfg.physical, opt.iterations,
                                                   opt.tolerance, init_key);
  log << "retrieval: " << result.iterations_run << " iterations, final residual "
      << (result.residuals.empty() ? 0.0 : result.residuals.back())
      << (result.converged ? " (converged)" : " (iteration cap)") << "\n";

  if (!opt.register_cint.empty()) {
    const auto cint = io::load_image(opt.register_cint);
    const auto shift = spectral::register_to_cint(result, cint);
    log << "registered to the interferometric image: shifted by (" << shift.par_cells << ", "
        << shift.perp_cells << ") cells\n";
  }

  const std::string name = "estimate" + suffix;
  io::save_retrieval(out / name, result);
  const auto img = estimate_as_image(result);
  save_quicklooks(out, name, img);
  const auto peaks = spectral::find_peaks(img, 0.25);
  io::save_peaks_csv(out / (name + "_peaks.csv"), peaks);
  log << "estimate peaks (>= 25% of max):\n";
  for (std::size_t i = 0; i < peaks.size() && i < 8; ++i) {
    log << "  (" << std::setprecision(4) << peaks[i].par << ", " << peaks[i].perp << ")  "
        << peaks[i].value << "\n";
  }
  log << "wrote " << (out / name).string() << ".{bin,json,csv,pgm}\n";
  return result;
}

}  // namespace

fs::path resolve_out_dir(const std::string& cli_value) {
  fs::path dir;
  if (!cli_value.empty()) {
    dir = cli_value;
  } else if (const char* env = std::getenv("SARCINT_OUT_DIR"); env && *env) {
    dir = env;
  } else {
    dir = ".";
  }
  fs::create_directories(dir);
  return dir;
}

config::SimulationConfig make_reference_config(double noise_percent, bool strong_medium) {
  auto cfg = config::default_config();
  cfg.physical.sigma = strong_medium ? 0.06 : 0.0;
  cfg.noise.sigma_w = 0.0;
  cfg.noise.percent_of_max = noise_percent;
  // Delta-omega = Omega/4 (the coarsest spacing the grid invariant allows)
  // keeps the figure pipelines a few times faster than the automatic Omega/8
  // default at a quadrature accuracy that is ample for these scenarios.
  cfg.frequency.samples = 121;
  return cfg;
}

void run_simulate(const config::SimulationConfig& cfg, const fs::path& out, std::ostream& log) {
  cfg.validate();
  const auto scales = scene::derive_scales(cfg.physical);
  for (const auto& warning : scene::validate_regime(cfg.physical, scales)) {
    log << "note: " << warning << "\n";
  }
  const auto freq = cfg.frequency_grid();
  const auto aperture = scene::build_aperture(cfg.physical);
  const medium::TravelTimeSampler sampler(aperture, scales, cfg.physical.ell_c);
  const auto travel = sampler.draw(cfg.medium_key());
  const auto data = forward::synthesize_data(cfg.physical, cfg.reflectivity, freq, aperture,
                                             travel, cfg.noise, cfg.noise_key());
  io::save_data_matrix(out / "data", data);
  io::save_travel_times_csv(out / "travel_times.csv", aperture, travel.values);
  log << "synthesized " << data.num_freq() << " x " << data.num_sensors()
      << " measurements (sigma_w = " << data.params.sigma_w << ", omega_o tau = "
      << cfg.physical.omega_o * scales.tau << ")\n";
  log << "wrote " << (out / "data").string() << ".{bin,json} and travel_times.csv\n";
}

void run_image(const config::SimulationConfig& cfg, const fs::path& data_base,
               const fs::path& out, std::ostream& log) {
  cfg.validate();
  const auto data = io::load_data_matrix(data_base);

  const auto sar = imaging::sar_image(data, cfg.image);
  io::save_image(out / "sar", sar, "sar_image");
  save_quicklooks(out, "sar", sar);
  log << "sar: " << cfg.image.n_par << " x " << cfg.image.n_perp << ", peak "
      << sar.values.maxCoeff() << "\n";

  const auto cint = imaging::cint_image(data, cfg.image, cfg.windows);
  io::save_image(out / "cint", cint, "cint_image");
  save_quicklooks(out, "cint", cint);
  log << "cint: peak " << cint.values.maxCoeff() << "\n";

  const auto tp = imaging::two_point_cint(data, cfg.centers, cfg.offsets, cfg.windows);
  io::save_two_point(out / "two_point", tp);

  const auto h = imaging::hcint_field(tp);
  io::save_hcint(out / "hcint", h);
  const auto map = offsets_modulus_map(h.offsets, h.values);
  io::save_image(out / "hcint_map", map, "hcint_modulus_map");
  save_quicklooks(out, "hcint_map", map);
  log << "two_point: " << cfg.centers.count() << " centers x " << cfg.offsets.count()
      << " offsets; hcint central value " << std::abs(h.values[h.offsets.center_linear()])
      << "\n";
  log << "wrote sar, cint, two_point, hcint, hcint_map under " << out.string() << "\n";
}

spectral::RetrievalResult run_retrieve(const config::SimulationConfig& cfg,
                                       const fs::path& hcint_base, const RetrieveOptions& opt,
                                       const fs::path& out, std::ostream& log) {
  cfg.validate();
  return retrieve_impl(cfg, hcint_base, opt, out, log, "");
}

void run_stats(const config::SimulationConfig& cfg, bool do_sar, bool do_cint, int realizations,
               const fs::path& out, std::ostream& log) {
  cfg.validate();
  const auto scales = scene::derive_scales(cfg.physical);
  log << "ensemble of " << realizations << " realizations, omega_o tau = "
      << cfg.physical.omega_o * scales.tau;
  if (scales.has_decoherence()) {
    log << ", X/X_d = " << cfg.windows.X / scales.decoherence_length
        << ", Omega/Omega_d = " << cfg.windows.Omega / scales.decoherence_frequency;
  }
  log << "\n";

  std::vector<ensemble::Functional> run;
  if (do_sar) run.push_back(ensemble::Functional::kSar);
  if (do_cint) run.push_back(ensemble::Functional::kCint);
  for (const auto f : run) {
    const auto report = ensemble::run_monte_carlo(cfg, f, realizations);
    const std::string name = ensemble::functional_name(f);
    imaging::ImageGrid grid{report.grid, report.mean};
    io::save_image(out / ("stats_" + name + "_mean"), grid, "ensemble_mean");
    save_quicklooks(out, "stats_" + name + "_mean", grid);
    grid.values = report.variance;
    io::save_image(out / ("stats_" + name + "_variance"), grid, "ensemble_variance");
    grid.values = report.cv;
    io::save_image(out / ("stats_" + name + "_cv"), grid, "ensemble_cv");
    io::save_image_csv(out / ("stats_" + name + "_cv.csv"), grid);

    const auto [pi, pj] = report.peak_index();
    log << name << ": peak mean " << report.mean(pi, pj) << " at ("
        << report.grid.par_at(pi) << ", " << report.grid.perp_at(pj) << "), peak CV "
        << report.peak_cv();
    if (f == ensemble::Functional::kSar) {
      log << (report.omega_o_tau > 5.0 ? "  [prediction: 1 in this regime]" : "");
    } else if (scales.has_decoherence()) {
      log << "  [predicted scale " << theory::cint_variation_scale(cfg.windows, scales) << "]";
    }
    log << "\n";
  }
  log << "wrote stats_* grids under " << out.string() << "\n";
}

void run_theory_check(const config::SimulationConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto scales = scene::derive_scales(cfg.physical);
  const auto eff = theory::effective_params(cfg.physical, scales, cfg.windows);
  const auto sar_pred = theory::predicted_sar_widths(cfg.physical);
  const auto cint_pred = theory::predicted_cint_widths(eff, cfg.physical);
  const bool random_medium = scales.has_decoherence();

  log << "scenario: omega_o tau = " << cfg.physical.omega_o * scales.tau;
  if (random_medium) {
    log << ", X_d = " << scales.decoherence_length
        << ", Omega_d = " << scales.decoherence_frequency;
  }
  log << "\n";
  log << "  " << std::left << std::setw(44) << "quantity" << std::right << std::setw(12)
      << "predicted" << std::setw(12) << "measured" << std::setw(10) << "ratio" << "\n";

  // Resolution of the matched filter: homogeneous noiseless point scatterer.
  {
    auto probe = cfg;
    probe.physical.sigma = 0.0;
    probe.noise = {};
    probe.reflectivity.scatterers = {{0.0, 0.0, 1.0}};
    const auto freq = probe.frequency_grid();
    const auto aperture = scene::build_aperture(probe.physical);
    const medium::TravelTimeSampler sampler(aperture, scene::derive_scales(probe.physical),
                                            probe.physical.ell_c);
    const auto data = forward::synthesize_data(probe.physical, probe.reflectivity, freq,
                                               aperture, sampler.draw(probe.medium_key()),
                                               probe.noise, probe.noise_key());
    // The cross-range lobe of the finite tapered aperture is wider than the
    // infinite-aperture prediction, so the grid spans 4x the predicted widths
    // to guarantee the e^{-1} crossings are bracketed.
    imaging::GridSpec grid{-4.0 * sar_pred.range, 4.0 * sar_pred.range, 161,
                           -4.0 * sar_pred.cross, 4.0 * sar_pred.cross, 161};
    const auto widths = measure::image_half_widths(imaging::sar_image(data, grid), 2.0);
    print_row(log, "matched-filter range half-width (c/B)", sar_pred.range, widths.par);
    print_row(log, "matched-filter cross half-width (L/k_o a)", sar_pred.cross, widths.perp);
  }

  // Interferometric blur: ensemble-mean profile widths for a point scatterer.
  {
    auto probe = cfg;
    probe.noise = {};
    probe.reflectivity.scatterers = {{0.0, 0.0, 1.0}};
    const int n_real = random_medium ? 20 : 2;

    probe.image = {-2.0 * cint_pred.range, 2.0 * cint_pred.range, 41, 0.0, 0.0, 1};
    auto report = ensemble::run_monte_carlo(probe, ensemble::Functional::kCint, n_real);
    imaging::ImageGrid mean_par{probe.image, report.mean};
    const double wpar = measure::image_half_widths(mean_par, 2.0).par;

    probe.image = {0.0, 0.0, 1, -2.0 * cint_pred.cross, 2.0 * cint_pred.cross, 41};
    report = ensemble::run_monte_carlo(probe, ensemble::Functional::kCint, n_real);
    imaging::ImageGrid mean_perp{probe.image, report.mean};
    const double wperp = measure::image_half_widths(mean_perp, 2.0).perp;

    print_row(log, "interferometric range blur (c/Omega~)", cint_pred.range, wpar);
    print_row(log, "interferometric cross blur (L/k_o X~)", cint_pred.cross, wperp);
  }

  // Variation coefficients at the peak pixel.
  {
    auto probe = cfg;
    probe.noise = {};
    probe.reflectivity.scatterers = {{0.0, 0.0, 1.0}};
    probe.image = {0.0, 0.0, 1, 0.0, 0.0, 1};
    const int n_real = random_medium ? 50 : 2;
    const auto sar_report = ensemble::run_monte_carlo(probe, ensemble::Functional::kSar, n_real);
    const auto cint_report =
        ensemble::run_monte_carlo(probe, ensemble::Functional::kCint, n_real);
    const double sar_cv_pred =
        random_medium && cfg.physical.omega_o * scales.tau > 5.0 ? 1.0 : 0.0;
    print_row(log, "matched-filter peak variation coeff", sar_cv_pred, sar_report.peak_cv());
    print_row(log, "interferometric peak variation coeff",
              random_medium ? theory::cint_variation_scale(cfg.windows, scales) : 0.0,
              cint_report.peak_cv());
  }

  // Additive-noise speckle radii of the matched-filter image.
  {
    auto probe = cfg;
    probe.physical.sigma = 0.0;
    probe.reflectivity.scatterers.clear();
    probe.noise = {};
    probe.noise.sigma_w = 1.0;
    const auto freq = probe.frequency_grid();
    const auto aperture = scene::build_aperture(probe.physical);
    const medium::TravelTimeSampler sampler(aperture, scene::derive_scales(probe.physical),
                                            probe.physical.ell_c);
    const auto travel = sampler.draw(probe.medium_key());

    const int n_probe = 41;
    imaging::GridSpec par_line{-2.0 * sar_pred.range, 2.0 * sar_pred.range, n_probe,
                               0.0, 0.0, 1};
    imaging::GridSpec perp_line{0.0, 0.0, 1, -4.0 * sar_pred.cross, 4.0 * sar_pred.cross,
                                n_probe};
    stats::CrossMoments along_par(n_probe), along_perp(n_probe);
    const int n_real = 400;
    for (int r = 0; r < n_real; ++r) {
      const rng::StreamKey noise_key{probe.seeds.global, rng::kStreamNoise,
                                     static_cast<std::uint64_t>(r)};
      const auto data = forward::synthesize_data(probe.physical, probe.reflectivity, freq,
                                                 aperture, travel, probe.noise, noise_key);
      const auto ipar = imaging::sar_image(data, par_line);
      const auto iperp = imaging::sar_image(data, perp_line);
      const double ref = ipar.values(n_probe / 2, 0);
      along_par.update(ref, ipar.values.col(0));
      along_perp.update(ref, iperp.values.row(0).transpose());
    }
    VectorXd coords(n_probe);
    for (int i = 0; i < n_probe; ++i) coords[i] = par_line.par_at(i);
    const double rpar = measure::half_width(coords, along_par.correlation(), 2.0);
    for (int i = 0; i < n_probe; ++i) coords[i] = perp_line.perp_at(i);
    const double rperp = measure::half_width(coords, along_perp.correlation(), 1.0);
    const auto floor = theory::noise_floor(probe.physical);
    print_row(log, "noise speckle range radius (c/B)", floor.range_radius, rpar);
    print_row(log, "noise speckle cross radius (L/k_o a)", floor.cross_radius, rperp);
  }
}

void run_reproduce_figure(int figure, std::optional<std::uint64_t> seed,
                          const RetrieveOptions& opt, const fs::path& out, std::ostream& log) {
  if (figure < 2 || figure > 5) {
    throw InvalidInput("reproduce-figure: figure must be 2, 3, 4 or 5");
  }

  if (figure == 2) {
    const auto cfg = make_reference_config(0.0, true);
    imaging::ImageGrid raster{cfg.image, MatrixXd::Zero(cfg.image.n_par, cfg.image.n_perp)};
    std::vector<spectral::Peak> points;
    for (const auto& s : cfg.reflectivity.scatterers) {
      const int i = static_cast<int>(std::lround((s.y_par - cfg.image.par_min) /
                                                 cfg.image.par_spacing()));
      const int j = static_cast<int>(std::lround((s.y_perp - cfg.image.perp_min) /
                                                 cfg.image.perp_spacing()));
      if (i >= 0 && i < cfg.image.n_par && j >= 0 && j < cfg.image.n_perp) {
        raster.values(i, j) += s.amplitude;
      }
      points.push_back({s.y_par, s.y_perp, s.amplitude});
    }
    io::save_image(out / "reflectivity", raster, "reflectivity_model");
    save_quicklooks(out, "reflectivity", raster);
    io::save_peaks_csv(out / "reflectivity_points.csv", points);
    log << "wrote the scatterer model under " << out.string() << "\n";
    return;
  }

  const double noise_percent = figure == 3 ? 0.0 : (figure == 4 ? 20.0 : 40.0);
  auto cfg = make_reference_config(noise_percent, figure != 3);
  if (seed) cfg.seeds.global = *seed;
  log << "scenario: " << noise_percent << "% noise, "
      << (figure == 3 ? "homogeneous medium" : "strong medium") << "\n";

  run_simulate(cfg, out, log);
  run_image(cfg, out / "data", out, log);

  RetrieveOptions plain = opt;
  plain.deflate_fraction = 0.0;
  // The windows and the finite center coverage imprint themselves on any
  // scene's offset profile.  A unit point scatterer at the origin, imaged by
  // the identical chain without medium or noise, measures that imprint once
  // so the retrieval can divide it out.
  if (plain.reference.empty()) {
    auto ref_cfg = cfg;
    ref_cfg.physical.sigma = 0.0;
    ref_cfg.noise = {};
    ref_cfg.reflectivity.scatterers = {{0.0, 0.0, 1.0}};
    const fs::path ref_dir = out / "reference";
    fs::create_directories(ref_dir);
    log << "reference run (unit point scatterer, homogeneous, noiseless):\n";
    run_simulate(ref_cfg, ref_dir, log);
    run_image(ref_cfg, ref_dir / "data", ref_dir, log);
    plain.reference = (ref_dir / "hcint").string();
  }
  if (plain.register_cint.empty()) plain.register_cint = (out / "cint").string();
  if (plain.iterations == RetrieveOptions{}.iterations) plain.iterations = 4000;
  retrieve_impl(cfg, out / "hcint", plain, out, log, "");

  if (figure == 5) {
    RetrieveOptions deflated = plain;
    deflated.deflate_fraction = opt.deflate_fraction > 0.0 ? opt.deflate_fraction : 0.2;
    retrieve_impl(cfg, out / "hcint", deflated, out, log, "_deflated");
  }
}

}  // namespace sarcint::pipeline
