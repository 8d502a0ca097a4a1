#include "sarcint/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "binary payloads are little-endian; big-endian hosts are not supported");

namespace sarcint::io {
namespace {

using nlohmann::json;

void write_bytes(const std::filesystem::path& path, const void* data, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out) throw std::runtime_error("short write: " + path.string());
}

std::vector<char> read_bytes(const std::filesystem::path& path, std::size_t expected) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  if (size != expected) {
    throw std::runtime_error("unexpected payload size in " + path.string());
  }
  std::vector<char> buf(size);
  in.seekg(0);
  in.read(buf.data(), static_cast<std::streamsize>(size));
  if (!in) throw std::runtime_error("short read: " + path.string());
  return buf;
}

void write_sidecar(const std::filesystem::path& base, const json& meta) {
  std::ofstream out(base.string() + ".json");
  if (!out) throw std::runtime_error("cannot open for writing: " + base.string() + ".json");
  out << meta.dump(2) << "\n";
}

json read_sidecar(const std::filesystem::path& base) {
  std::ifstream in(base.string() + ".json");
  if (!in) throw std::runtime_error("cannot open for reading: " + base.string() + ".json");
  json meta;
  try {
    in >> meta;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed sidecar " + base.string() + ".json: " + e.what());
  }
  return meta;
}

// Complex matrices go out frequency-major (row-major) as interleaved re,im.
void write_complex_matrix(const std::filesystem::path& path, const MatrixXcd& m) {
  std::vector<double> buf;
  buf.reserve(static_cast<std::size_t>(m.size()) * 2);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      buf.push_back(m(i, j).real());
      buf.push_back(m(i, j).imag());
    }
  }
  write_bytes(path, buf.data(), buf.size() * sizeof(double));
}

MatrixXcd read_complex_matrix(const std::filesystem::path& path, Eigen::Index rows,
                              Eigen::Index cols) {
  const auto buf =
      read_bytes(path, static_cast<std::size_t>(rows) * cols * 2 * sizeof(double));
  const double* d = reinterpret_cast<const double*>(buf.data());
  MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(d[0], d[1]);
      d += 2;
    }
  }
  return m;
}

void write_real_matrix(const std::filesystem::path& path, const MatrixXd& m) {
  std::vector<double> buf;
  buf.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) buf.push_back(m(i, j));
  }
  write_bytes(path, buf.data(), buf.size() * sizeof(double));
}

MatrixXd read_real_matrix(const std::filesystem::path& path, Eigen::Index rows,
                          Eigen::Index cols) {
  const auto buf = read_bytes(path, static_cast<std::size_t>(rows) * cols * sizeof(double));
  const double* d = reinterpret_cast<const double*>(buf.data());
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = *d++;
  }
  return m;
}

json physical_to_json(const scene::PhysicalParams& p) {
  return json{{"c", p.c},         {"omega_o", p.omega_o}, {"B", p.B},
              {"L", p.L},         {"a", p.a},             {"N", p.N},
              {"sigma", p.sigma}, {"ell_c", p.ell_c},     {"sigma_w", p.sigma_w}};
}

scene::PhysicalParams physical_from_json(const json& j) {
  scene::PhysicalParams p;
  p.c = j.at("c");
  p.omega_o = j.at("omega_o");
  p.B = j.at("B");
  p.L = j.at("L");
  p.a = j.at("a");
  p.N = j.at("N");
  p.sigma = j.at("sigma");
  p.ell_c = j.at("ell_c");
  p.sigma_w = j.at("sigma_w");
  return p;
}

json key_to_json(const rng::StreamKey& k) {
  return json{{"seed", k.seed}, {"stream", k.stream}, {"realization", k.realization}};
}

rng::StreamKey key_from_json(const json& j) {
  return {j.at("seed"), j.at("stream"), j.at("realization")};
}

json grid_to_json(const imaging::GridSpec& g) {
  return json{{"par_min", g.par_min},   {"par_max", g.par_max},   {"n_par", g.n_par},
              {"perp_min", g.perp_min}, {"perp_max", g.perp_max}, {"n_perp", g.n_perp}};
}

imaging::GridSpec grid_from_json(const json& j) {
  imaging::GridSpec g;
  g.par_min = j.at("par_min");
  g.par_max = j.at("par_max");
  g.n_par = j.at("n_par");
  g.perp_min = j.at("perp_min");
  g.perp_max = j.at("perp_max");
  g.n_perp = j.at("n_perp");
  return g;
}

json offsets_to_json(const imaging::OffsetGrid& g) {
  return json{{"n_par", g.n_par},
              {"n_perp", g.n_perp},
              {"period_par", g.period_par},
              {"period_perp", g.period_perp}};
}

imaging::OffsetGrid offsets_from_json(const json& j) {
  imaging::OffsetGrid g;
  g.n_par = j.at("n_par");
  g.n_perp = j.at("n_perp");
  g.period_par = j.at("period_par");
  g.period_perp = j.at("period_perp");
  return g;
}

std::filesystem::path bin_path(const std::filesystem::path& base) {
  return std::filesystem::path(base.string() + ".bin");
}

}  // namespace

void save_data_matrix(const std::filesystem::path& base, const forward::DataMatrix& data) {
  json meta{{"kind", "data_matrix"},
            {"dtype", "complex128"},
            {"byte_order", "little"},
            {"layout", "frequency-major interleaved re,im"},
            {"num_freq", data.num_freq()},
            {"num_sensors", data.num_sensors()},
            {"omegas", data.freq.omegas},
            {"physical", physical_to_json(data.params)},
            {"medium_key", key_to_json(data.medium_key)},
            {"noise_key", key_to_json(data.noise_key)}};
  write_sidecar(base, meta);
  write_complex_matrix(bin_path(base), data.values);
}

forward::DataMatrix load_data_matrix(const std::filesystem::path& base) {
  const json meta = read_sidecar(base);
  if (meta.at("kind") != "data_matrix") {
    throw std::runtime_error("not a data matrix: " + base.string());
  }
  forward::DataMatrix d;
  d.params = physical_from_json(meta.at("physical"));
  d.freq.omegas = meta.at("omegas").get<std::vector<double>>();
  d.aperture = scene::build_aperture(d.params);
  d.medium_key = key_from_json(meta.at("medium_key"));
  d.noise_key = key_from_json(meta.at("noise_key"));
  d.values = read_complex_matrix(bin_path(base), meta.at("num_freq").get<int>(),
                                 meta.at("num_sensors").get<int>());
  return d;
}

void save_image(const std::filesystem::path& base, const imaging::ImageGrid& image,
                const std::string& kind) {
  json meta{{"kind", kind},
            {"dtype", "float64"},
            {"byte_order", "little"},
            {"layout", "par-major"},
            {"grid", grid_to_json(image.grid)}};
  write_sidecar(base, meta);
  write_real_matrix(bin_path(base), image.values);
}

imaging::ImageGrid load_image(const std::filesystem::path& base) {
  const json meta = read_sidecar(base);
  imaging::ImageGrid img;
  img.grid = grid_from_json(meta.at("grid"));
  img.values = read_real_matrix(bin_path(base), img.grid.n_par, img.grid.n_perp);
  return img;
}

void save_image_csv(const std::filesystem::path& path, const imaging::ImageGrid& image) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "y_par,y_perp,value\n";
  out.precision(17);
  for (int i = 0; i < image.grid.n_par; ++i) {
    for (int j = 0; j < image.grid.n_perp; ++j) {
      out << image.grid.par_at(i) << ',' << image.grid.perp_at(j) << ',' << image.values(i, j)
          << '\n';
    }
  }
}

void save_image_pgm(const std::filesystem::path& path, const imaging::ImageGrid& image) {
  const double lo = image.values.minCoeff();
  const double hi = image.values.maxCoeff();
  const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "P5\n" << image.grid.n_perp << " " << image.grid.n_par << "\n255\n";
  for (int i = image.grid.n_par - 1; i >= 0; --i) {
    for (int j = 0; j < image.grid.n_perp; ++j) {
      const auto v = static_cast<unsigned char>(
          std::lround((image.values(i, j) - lo) * scale));
      out.put(static_cast<char>(v));
    }
  }
}

void save_two_point(const std::filesystem::path& base, const imaging::TwoPointField& field) {
  json meta{{"kind", "two_point_field"},
            {"dtype", "complex128"},
            {"byte_order", "little"},
            {"layout", "center-major interleaved re,im"},
            {"centers", grid_to_json(field.centers)},
            {"offsets", offsets_to_json(field.offsets)}};
  write_sidecar(base, meta);
  write_complex_matrix(bin_path(base), field.values);
}

imaging::TwoPointField load_two_point(const std::filesystem::path& base) {
  const json meta = read_sidecar(base);
  imaging::TwoPointField f;
  f.centers = grid_from_json(meta.at("centers"));
  f.offsets = offsets_from_json(meta.at("offsets"));
  f.values = read_complex_matrix(bin_path(base), f.centers.count(), f.offsets.count());
  return f;
}

void save_hcint(const std::filesystem::path& base, const imaging::HcintField& h) {
  json meta{{"kind", "hcint_field"},
            {"dtype", "complex128"},
            {"byte_order", "little"},
            {"layout", "offset par-major interleaved re,im"},
            {"offsets", offsets_to_json(h.offsets)}};
  write_sidecar(base, meta);
  write_complex_matrix(bin_path(base), h.values);
}

imaging::HcintField load_hcint(const std::filesystem::path& base) {
  const json meta = read_sidecar(base);
  imaging::HcintField h;
  h.offsets = offsets_from_json(meta.at("offsets"));
  h.values = read_complex_matrix(bin_path(base), h.offsets.count(), 1);
  return h;
}

void save_spectrum(const std::filesystem::path& base, const imaging::SpectrumGrid& spec) {
  json meta{{"kind", "spectrum"},
            {"dtype", "complex128"},
            {"byte_order", "little"},
            {"layout", "kappa_par-major interleaved re,im"},
            {"kappa_par", std::vector<double>(spec.kappa_par.begin(), spec.kappa_par.end())},
            {"kappa_perp", std::vector<double>(spec.kappa_perp.begin(), spec.kappa_perp.end())}};
  write_sidecar(base, meta);
  write_complex_matrix(bin_path(base), spec.values);
}

imaging::SpectrumGrid load_spectrum(const std::filesystem::path& base) {
  const json meta = read_sidecar(base);
  imaging::SpectrumGrid s;
  const auto kp = meta.at("kappa_par").get<std::vector<double>>();
  const auto kq = meta.at("kappa_perp").get<std::vector<double>>();
  s.kappa_par = Eigen::Map<const VectorXd>(kp.data(), static_cast<Eigen::Index>(kp.size()));
  s.kappa_perp = Eigen::Map<const VectorXd>(kq.data(), static_cast<Eigen::Index>(kq.size()));
  s.values = read_complex_matrix(bin_path(base), s.kappa_par.size(), s.kappa_perp.size());
  return s;
}

void save_retrieval(const std::filesystem::path& base, const spectral::RetrievalResult& r) {
  json meta{{"kind", "retrieval"},
            {"dtype", "float64"},
            {"byte_order", "little"},
            {"layout", "par-major"},
            {"rows", r.rho_est.rows()},
            {"cols", r.rho_est.cols()},
            {"cell_par", r.h_par},
            {"cell_perp", r.h_perp},
            {"iterations_run", r.iterations_run},
            {"converged", r.converged},
            {"shift_ambiguity", "global shift modulo grid period"},
            {"reflection_ambiguity", "estimate may be point-reflected about the origin"},
            {"residuals", r.residuals}};
  write_sidecar(base, meta);
  write_real_matrix(bin_path(base), r.rho_est);
}

void save_peaks_csv(const std::filesystem::path& path, const std::vector<spectral::Peak>& peaks) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "y_par,y_perp,value\n";
  out.precision(17);
  for (const auto& p : peaks) out << p.par << ',' << p.perp << ',' << p.value << '\n';
}

void save_travel_times_csv(const std::filesystem::path& path,
                           const scene::ApertureGeometry& aperture,
                           const std::vector<double>& travel_times) {
  if (aperture.positions.size() != travel_times.size()) {
    throw InvalidInput("travel-time dump: aperture/vector size mismatch");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "n,x_perp,travel_time\n";
  out.precision(17);
  for (std::size_t n = 0; n < travel_times.size(); ++n) {
    out << n << ',' << aperture.positions[n] << ',' << travel_times[n] << '\n';
  }
}

}  // namespace sarcint::io
