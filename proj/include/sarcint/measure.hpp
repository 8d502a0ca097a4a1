#pragma once

#include "sarcint/common.hpp"
#include "sarcint/imaging.hpp"

namespace sarcint::measure {

/// Half-width of a sampled nonnegative profile: half the distance between the
/// two points, one on each side of the maximum, where the profile first
/// crosses max * exp(-decay).  Crossings are interpolated log-linearly
/// between the bracketing samples (linearly if a sample is zero).  Returns
/// NaN when either side never drops below the threshold inside the sampled
/// range.  decay = 2 on an intensity profile equals decay = 1 on the
/// underlying amplitude.
double half_width(const VectorXd& coords, const VectorXd& profile, double decay);

struct ProfileWidths {
  double par = 0.0;
  double perp = 0.0;
};

/// Half-widths of the profiles through the image's maximum pixel, along the
/// par axis (fixed perp) and the perp axis (fixed par).
ProfileWidths image_half_widths(const imaging::ImageGrid& image, double decay);

/// Location of the image's maximum pixel in physical coordinates.
Point peak_location(const imaging::ImageGrid& image);

}  // namespace sarcint::measure
