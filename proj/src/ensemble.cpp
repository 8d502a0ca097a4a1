#include "sarcint/ensemble.hpp"

#include <cmath>
#include <limits>

#include "sarcint/forward.hpp"
#include "sarcint/medium.hpp"
#include "sarcint/stats.hpp"

namespace sarcint::ensemble {

const char* functional_name(Functional f) {
  switch (f) {
    case Functional::kSar:
      return "sar";
    case Functional::kCint:
      return "cint";
  }
  return "?";
}

std::pair<int, int> EnsembleReport::peak_index() const {
  Eigen::Index i = 0, j = 0;
  mean.maxCoeff(&i, &j);
  return {static_cast<int>(i), static_cast<int>(j)};
}

double EnsembleReport::peak_cv() const {
  const auto [i, j] = peak_index();
  return cv(i, j);
}

EnsembleReport run_monte_carlo(const config::SimulationConfig& cfg, Functional functional,
                               int n_realizations) {
  if (n_realizations < 2) throw InvalidInput("monte carlo: need at least 2 realizations");
  cfg.validate();

  const auto freq = cfg.frequency_grid();
  const auto aperture = scene::build_aperture(cfg.physical);
  const auto scales = scene::derive_scales(cfg.physical);
  const medium::TravelTimeSampler sampler(aperture, scales, cfg.physical.ell_c);

  stats::FieldMoments moments(cfg.image.n_par, cfg.image.n_perp);
  for (int r = 0; r < n_realizations; ++r) {
    const rng::StreamKey medium_key{cfg.seeds.global, rng::kStreamMedium,
                                    static_cast<std::uint64_t>(r)};
    const rng::StreamKey noise_key{cfg.seeds.global, rng::kStreamNoise,
                                   static_cast<std::uint64_t>(r)};
    const auto travel = sampler.draw(medium_key);
    const auto data = forward::synthesize_data(cfg.physical, cfg.reflectivity, freq, aperture,
                                               travel, cfg.noise, noise_key);
    const auto image = functional == Functional::kSar
                           ? imaging::sar_image(data, cfg.image)
                           : imaging::cint_image(data, cfg.image, cfg.windows);
    moments.update(image.values);
  }

  EnsembleReport report;
  report.functional = functional;
  report.grid = cfg.image;
  report.realizations = n_realizations;
  report.seed = cfg.seeds.global;
  report.omega_o_tau = cfg.physical.omega_o * scales.tau;
  if (scales.has_decoherence()) {
    report.x_ratio = cfg.windows.X / scales.decoherence_length;
    report.omega_ratio = cfg.windows.Omega / scales.decoherence_frequency;
  }
  report.mean = moments.mean();
  report.variance = moments.variance();

  const double floor = report.threshold_fraction * report.mean.maxCoeff();
  report.cv = MatrixXd::Constant(report.mean.rows(), report.mean.cols(),
                                 std::numeric_limits<double>::quiet_NaN());
  for (Eigen::Index i = 0; i < report.mean.rows(); ++i) {
    for (Eigen::Index j = 0; j < report.mean.cols(); ++j) {
      if (report.mean(i, j) > floor) {
        report.cv(i, j) = std::sqrt(report.variance(i, j)) / report.mean(i, j);
      }
    }
  }
  return report;
}

}  // namespace sarcint::ensemble
