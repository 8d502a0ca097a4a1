#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "sarcint/config.hpp"
#include "sarcint/pipeline.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("-c,--config", opt.config_path, "JSON run description (defaults apply)")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", opt.out_dir,
                  "output directory (default: $SARCINT_OUT_DIR, else '.')");
  cmd->add_option("--seed", opt.seed, "override the config's global seed");
  cmd->add_option("--workers", opt.workers, "thread count (0 = library default)");
}

sarcint::config::SimulationConfig resolve_config(const CommonOptions& opt) {
#ifdef _OPENMP
  if (opt.workers > 0) omp_set_num_threads(opt.workers);
#endif
  auto cfg = opt.config_path.empty() ? sarcint::config::default_config()
                                     : sarcint::config::load_config(opt.config_path);
  if (opt.seed) cfg.seeds.global = *opt.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Synthetic-aperture imaging through a randomly perturbed medium: data synthesis, "
      "matched-filter and interferometric imaging, offset spectra and phase retrieval"};
  app.require_subcommand(1);

  CommonOptions sim_opt;
  auto* sim = app.add_subcommand("simulate", "synthesize one data set");
  add_common(sim, sim_opt);

  CommonOptions img_opt;
  std::string data_base;
  auto* img = app.add_subcommand("image", "form sar/cint/two_point/hcint products");
  add_common(img, img_opt);
  img->add_option("--data", data_base, "data file base path (default: <out>/data)");

  CommonOptions ret_opt;
  std::string hcint_base;
  sarcint::pipeline::RetrieveOptions retrieve;
  auto* ret = app.add_subcommand("retrieve", "spectrum, modulus and phase retrieval");
  add_common(ret, ret_opt);
  ret->add_option("--hcint", hcint_base, "offset profile base path (default: <out>/hcint)");
  ret->add_option("--deflate-peak", retrieve.deflate_fraction,
                  "scale the zero-offset sample by 1 - FRACTION first")
      ->check(CLI::Range(0.0, 0.999));
  ret->add_option("--iterations", retrieve.iterations, "iteration cap (default 1000)")
      ->check(CLI::PositiveNumber);
  ret->add_option("--tolerance", retrieve.tolerance, "residual stop threshold (default 1e-4)");
  ret->add_option("--init-seed", retrieve.init_seed,
                  "seed for the random initial phases (default: the global seed)");
  ret->add_option("--pad", retrieve.pad_factor, "offset zero-padding factor (default 2)")
      ->check(CLI::PositiveNumber);
  ret->add_option("--register-cint", retrieve.register_cint,
                  "image base path to center the estimate against");
  ret->add_option("--reference", retrieve.reference,
                  "offset-profile base of a point-scatterer reference run; calibrates the "
                  "modulus by the measured spectrum instead of the analytic envelope");
  ret->add_option("--window-floor", retrieve.window_floor,
                  "floor of the cross-range window compensation used with --reference "
                  "(default 0.4)")
      ->check(CLI::Range(0.001, 1.0));

  CommonOptions stats_opt;
  int realizations = 200;
  std::string functional = "both";
  auto* stats = app.add_subcommand("stats", "Monte Carlo per-pixel statistics");
  add_common(stats, stats_opt);
  stats->add_option("--realizations", realizations, "ensemble size (default 200)")
      ->check(CLI::Range(2, 1000000));
  stats->add_option("--functional", functional, "sar, cint or both (default both)")
      ->check(CLI::IsMember({"sar", "cint", "both"}));

  CommonOptions check_opt;
  auto* check = app.add_subcommand("theory-check",
                                   "predicted vs measured widths, variation, noise radii");
  add_common(check, check_opt);

  CommonOptions fig_opt;
  int figure = 0;
  sarcint::pipeline::RetrieveOptions fig_retrieve;
  auto* fig = app.add_subcommand("reproduce-figure", "end-to-end reference scenarios");
  add_common(fig, fig_opt);
  fig->add_option("figure", figure, "2 (model), 3 (clean), 4 (20% noise), 5 (40% noise)")
      ->required()
      ->check(CLI::Range(2, 5));
  fig->add_option("--deflate-peak", fig_retrieve.deflate_fraction,
                  "deflation fraction for the figure-5 variant (default 0.2)")
      ->check(CLI::Range(0.0, 0.999));
  fig->add_option("--iterations", fig_retrieve.iterations, "retrieval iteration cap");
  fig->add_option("--tolerance", fig_retrieve.tolerance, "retrieval stop threshold");
  fig->add_option("--reference", fig_retrieve.reference,
                  "reuse an existing point-scatterer reference profile instead of running one");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const auto cfg = resolve_config(sim_opt);
      sarcint::pipeline::run_simulate(cfg, sarcint::pipeline::resolve_out_dir(sim_opt.out_dir),
                                      std::cout);
    } else if (*img) {
      const auto cfg = resolve_config(img_opt);
      const auto out = sarcint::pipeline::resolve_out_dir(img_opt.out_dir);
      const auto base = data_base.empty() ? (out / "data").string() : data_base;
      sarcint::pipeline::run_image(cfg, base, out, std::cout);
    } else if (*ret) {
      const auto cfg = resolve_config(ret_opt);
      const auto out = sarcint::pipeline::resolve_out_dir(ret_opt.out_dir);
      const auto base = hcint_base.empty() ? (out / "hcint").string() : hcint_base;
      sarcint::pipeline::run_retrieve(cfg, base, retrieve, out, std::cout);
    } else if (*stats) {
      const auto cfg = resolve_config(stats_opt);
      sarcint::pipeline::run_stats(cfg, functional != "cint", functional != "sar", realizations,
                                   sarcint::pipeline::resolve_out_dir(stats_opt.out_dir),
                                   std::cout);
    } else if (*check) {
      const auto cfg = resolve_config(check_opt);
      sarcint::pipeline::run_theory_check(cfg, std::cout);
    } else if (*fig) {
#ifdef _OPENMP
      if (fig_opt.workers > 0) omp_set_num_threads(fig_opt.workers);
#endif
      sarcint::pipeline::run_reproduce_figure(
          figure, fig_opt.seed, fig_retrieve,
          sarcint::pipeline::resolve_out_dir(fig_opt.out_dir), std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
