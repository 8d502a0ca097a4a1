#include "sarcint/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <type_traits>

#include <json.hpp>

namespace sarcint::config {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config: " + message); }

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; }) == allowed.end()) {
      std::ostringstream os;
      os << "unknown key \"" << it.key() << "\" in " << where << " (allowed:";
      for (const char* k : allowed) os << ' ' << k;
      os << ')';
      fail(os.str());
    }
  }
}

/// Overwrites `out` when `key` is present; enforces the JSON type strictly
/// (no silent truncation of 3.5 to an int, no negative seeds).
template <typename T>
void assign(const json& j, const char* key, T& out, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) fail(where + "." + key + " must be a boolean");
  } else if constexpr (std::is_unsigned_v<T>) {
    if (!it->is_number_unsigned()) fail(where + "." + key + " must be a nonnegative integer");
  } else if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer()) fail(where + "." + key + " must be an integer");
  } else {
    if (!it->is_number()) fail(where + "." + key + " must be a number");
  }
  out = it->get<T>();
}

void parse_physical(const json& j, scene::PhysicalParams& p) {
  check_keys(j, "physical", {"c", "omega_o", "B", "L", "a", "N", "sigma", "ell_c"});
  assign(j, "c", p.c, "physical");
  assign(j, "omega_o", p.omega_o, "physical");
  assign(j, "B", p.B, "physical");
  assign(j, "L", p.L, "physical");
  assign(j, "a", p.a, "physical");
  assign(j, "N", p.N, "physical");
  assign(j, "sigma", p.sigma, "physical");
  assign(j, "ell_c", p.ell_c, "physical");
}

void parse_reflectivity(const json& j, scene::Reflectivity& r) {
  if (!j.is_array()) fail("reflectivity must be an array of scatterers");
  r.scatterers.clear();
  int index = 0;
  for (const auto& entry : j) {
    const std::string where = "reflectivity[" + std::to_string(index++) + "]";
    check_keys(entry, where, {"par", "perp", "amplitude"});
    if (!entry.contains("par") || !entry.contains("perp")) {
      fail(where + " needs both \"par\" and \"perp\"");
    }
    scene::PointScatterer s;
    s.amplitude = 1.0;
    assign(entry, "par", s.y_par, where);
    assign(entry, "perp", s.y_perp, where);
    assign(entry, "amplitude", s.amplitude, where);
    r.scatterers.push_back(s);
  }
}

void parse_grid_spec(const json& j, const std::string& where, imaging::GridSpec& g) {
  check_keys(j, where, {"par_min", "par_max", "n_par", "perp_min", "perp_max", "n_perp"});
  assign(j, "par_min", g.par_min, where);
  assign(j, "par_max", g.par_max, where);
  assign(j, "n_par", g.n_par, where);
  assign(j, "perp_min", g.perp_min, where);
  assign(j, "perp_max", g.perp_max, where);
  assign(j, "n_perp", g.n_perp, where);
}

void parse_offsets(const json& j, imaging::OffsetGrid& g) {
  check_keys(j, "grids.offsets", {"n_par", "n_perp", "period_par", "period_perp"});
  assign(j, "n_par", g.n_par, "grids.offsets");
  assign(j, "n_perp", g.n_perp, "grids.offsets");
  assign(j, "period_par", g.period_par, "grids.offsets");
  assign(j, "period_perp", g.period_perp, "grids.offsets");
}

void parse_grids(const json& j, SimulationConfig& c) {
  check_keys(j, "grids", {"frequency", "image", "centers", "offsets"});
  if (j.contains("frequency")) {
    check_keys(j.at("frequency"), "grids.frequency", {"q", "samples"});
    assign(j.at("frequency"), "q", c.frequency.q, "grids.frequency");
    assign(j.at("frequency"), "samples", c.frequency.samples, "grids.frequency");
  }
  if (j.contains("image")) parse_grid_spec(j.at("image"), "grids.image", c.image);
  if (j.contains("centers")) parse_grid_spec(j.at("centers"), "grids.centers", c.centers);
  if (j.contains("offsets")) parse_offsets(j.at("offsets"), c.offsets);
}

void parse_windows(const json& j, imaging::WindowParams& w) {
  check_keys(j, "windows", {"X", "Omega", "band_cutoff"});
  assign(j, "X", w.X, "windows");
  assign(j, "Omega", w.Omega, "windows");
  assign(j, "band_cutoff", w.band_cutoff, "windows");
}

void parse_noise(const json& j, forward::NoiseSpec& n) {
  check_keys(j, "noise", {"sigma_w", "percent_of_max"});
  assign(j, "sigma_w", n.sigma_w, "noise");
  assign(j, "percent_of_max", n.percent_of_max, "noise");
}

void parse_seeds(const json& j, SeedsConfig& s) {
  check_keys(j, "seeds", {"global", "medium_realization", "noise_realization", "init"});
  assign(j, "global", s.global, "seeds");
  assign(j, "medium_realization", s.medium_realization, "seeds");
  assign(j, "noise_realization", s.noise_realization, "seeds");
  assign(j, "init", s.init, "seeds");
}

SimulationConfig parse_root(const json& root) {
  check_keys(root, "the top level",
             {"physical", "reflectivity", "grids", "windows", "noise", "seeds"});
  SimulationConfig c = default_config();
  if (root.contains("physical")) parse_physical(root.at("physical"), c.physical);
  if (root.contains("reflectivity")) parse_reflectivity(root.at("reflectivity"), c.reflectivity);
  if (root.contains("grids")) parse_grids(root.at("grids"), c);
  if (root.contains("windows")) parse_windows(root.at("windows"), c.windows);
  if (root.contains("noise")) parse_noise(root.at("noise"), c.noise);
  if (root.contains("seeds")) parse_seeds(root.at("seeds"), c.seeds);
  c.validate();
  return c;
}

}  // namespace

void SimulationConfig::validate() const {
  physical.validate();
  reflectivity.validate(physical.ell_c);
  image.validate();
  centers.validate();
  offsets.validate();
  windows.validate();
  noise.validate();
  if (!(frequency.q > 0.0)) throw ConfigError("config: grids.frequency.q must be positive");
  if (frequency.samples < 0) {
    throw ConfigError("config: grids.frequency.samples must be nonnegative");
  }
  try {
    (void)frequency_grid();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

rng::StreamKey SimulationConfig::medium_key() const {
  return {seeds.global, rng::kStreamMedium, seeds.medium_realization};
}

rng::StreamKey SimulationConfig::noise_key() const {
  return {seeds.global, rng::kStreamNoise, seeds.noise_realization};
}

rng::StreamKey SimulationConfig::init_key() const {
  return {seeds.global, rng::kStreamPhaseInit, seeds.init};
}

scene::FrequencyGrid SimulationConfig::frequency_grid() const {
  return scene::build_frequency_grid(physical, frequency.q, frequency.samples, windows.Omega);
}

SimulationConfig default_config() {
  SimulationConfig c;
  c.physical.sigma = 0.06;  // the reference medium; set to 0 for homogeneous
  c.reflectivity.scatterers = {{2.5, 0.0, 1.0}, {-2.5, 0.0, 1.0}, {0.0, 2.5, 1.0},
                               {0.0, -2.5, 1.0}};
  c.image = {-6.0, 6.0, 121, -6.0, 6.0, 121};
  // Each scatterer contributes to the offset profile through a Gaussian
  // center response of width ~L/(2 k_o X) = 2 about its own position, so the
  // center region must overshoot the scatterer support (|y| <= 2.5) by a few
  // of those widths; +-8 captures ~98% of the response of the outermost
  // scatterers, keeping their zero-offset mass in balance with the
  // cross-scatterer lags.
  c.centers = {-8.0, 8.0, 13, -8.0, 8.0, 13};
  // Offset period 16.25 = 65 lambda_o/4 on both axes: after the default x2
  // zero-padding the spectral spacing is 2 pi/32.5, so -2 k_o falls on the
  // dual lattice (65 steps) and the in-band retrieval grid is 13x13 with a
  // spatial cell of exactly 2.5 lambda_o on each axis.  Range steps are
  // lambda_o * 65/348 (fine enough for the band around -2 k_o); cross-range
  // steps 0.65 lambda_o cover the baseband spectrum.
  c.offsets = {87, 25, 16.25, 16.25};
  c.windows.X = c.physical.a / 5.0;
  c.windows.Omega = c.physical.B / 5.0;
  return c;
}

SimulationConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_root(root);
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace sarcint::config
