#pragma once

#include <filesystem>
#include <string>

#include "sarcint/common.hpp"
#include "sarcint/forward.hpp"
#include "sarcint/imaging.hpp"
#include "sarcint/spectral.hpp"

namespace sarcint::io {

/// All binary payloads are little-endian float64 next to a ".json" sidecar
/// describing shape, layout and provenance; round trips are bit-exact.
/// `base` is the path without extension: base.bin + base.json.

void save_data_matrix(const std::filesystem::path& base, const forward::DataMatrix& data);
forward::DataMatrix load_data_matrix(const std::filesystem::path& base);

void save_image(const std::filesystem::path& base, const imaging::ImageGrid& image,
                const std::string& kind);
imaging::ImageGrid load_image(const std::filesystem::path& base);

/// Plain-text dump: one "y_par,y_perp,value" row per pixel.
void save_image_csv(const std::filesystem::path& path, const imaging::ImageGrid& image);

/// 8-bit binary graymap (P5), min-max normalized, rows top-to-bottom in
/// decreasing y_par.
void save_image_pgm(const std::filesystem::path& path, const imaging::ImageGrid& image);

void save_two_point(const std::filesystem::path& base, const imaging::TwoPointField& field);
imaging::TwoPointField load_two_point(const std::filesystem::path& base);

void save_hcint(const std::filesystem::path& base, const imaging::HcintField& h);
imaging::HcintField load_hcint(const std::filesystem::path& base);

void save_spectrum(const std::filesystem::path& base, const imaging::SpectrumGrid& spec);
imaging::SpectrumGrid load_spectrum(const std::filesystem::path& base);

void save_retrieval(const std::filesystem::path& base, const spectral::RetrievalResult& r);

void save_peaks_csv(const std::filesystem::path& path, const std::vector<spectral::Peak>& peaks);

/// "n,x_perp,travel_time" rows.
void save_travel_times_csv(const std::filesystem::path& path,
                           const scene::ApertureGeometry& aperture,
                           const std::vector<double>& travel_times);

}  // namespace sarcint::io
