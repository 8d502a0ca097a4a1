#include "sarcint/measure.hpp"

#include <cmath>
#include <limits>

namespace sarcint::measure {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Coordinate where the profile crosses `threshold` between samples i and
/// i + step (profile[i] >= threshold > profile[i + step]).
double crossing(const VectorXd& coords, const VectorXd& profile, Eigen::Index i, int step,
                double threshold) {
  const double p0 = profile[i];
  const double p1 = profile[i + step];
  const double x0 = coords[i];
  const double x1 = coords[i + step];
  double t;
  if (p1 > 0.0 && p0 > 0.0) {
    t = (std::log(p0) - std::log(threshold)) / (std::log(p0) - std::log(p1));
  } else {
    t = (p0 - threshold) / (p0 - p1);
  }
  return x0 + t * (x1 - x0);
}

}  // namespace

double half_width(const VectorXd& coords, const VectorXd& profile, double decay) {
  if (coords.size() != profile.size() || coords.size() < 3) {
    throw InvalidInput("half_width: need matching coordinate/profile vectors of length >= 3");
  }
  Eigen::Index peak = 0;
  profile.maxCoeff(&peak);
  const double threshold = profile[peak] * std::exp(-decay);
  if (!(threshold > 0.0)) return kNaN;

  double right = kNaN;
  for (Eigen::Index i = peak; i + 1 < profile.size(); ++i) {
    if (profile[i] >= threshold && profile[i + 1] < threshold) {
      right = crossing(coords, profile, i, +1, threshold);
      break;
    }
  }
  double left = kNaN;
  for (Eigen::Index i = peak; i - 1 >= 0; --i) {
    if (profile[i] >= threshold && profile[i - 1] < threshold) {
      left = crossing(coords, profile, i, -1, threshold);
      break;
    }
  }
  return (right - left) / 2.0;  // NaN propagates if either side is unbracketed
}

ProfileWidths image_half_widths(const imaging::ImageGrid& image, double decay) {
  Eigen::Index pi = 0, pj = 0;
  image.values.maxCoeff(&pi, &pj);

  VectorXd par_coords(image.grid.n_par);
  for (int i = 0; i < image.grid.n_par; ++i) par_coords[i] = image.grid.par_at(i);
  VectorXd perp_coords(image.grid.n_perp);
  for (int j = 0; j < image.grid.n_perp; ++j) perp_coords[j] = image.grid.perp_at(j);

  // Axes too short to bracket a crossing report NaN rather than erroring, so
  // callers can measure 1-D profile grids (1 x P or P x 1) with one call.
  ProfileWidths w;
  w.par = image.grid.n_par >= 3 ? half_width(par_coords, image.values.col(pj), decay) : kNaN;
  w.perp =
      image.grid.n_perp >= 3 ? half_width(perp_coords, image.values.row(pi).transpose(), decay)
                             : kNaN;
  return w;
}

Point peak_location(const imaging::ImageGrid& image) {
  Eigen::Index i = 0, j = 0;
  image.values.maxCoeff(&i, &j);
  return {image.grid.par_at(static_cast<int>(i)), image.grid.perp_at(static_cast<int>(j))};
}

}  // namespace sarcint::measure
