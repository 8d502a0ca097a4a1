#pragma once

#include "sarcint/common.hpp"

namespace sarcint::fft {

/// 2-D DFT between grids whose index origin sits at (floor(rows/2),
/// floor(cols/2)), i.e. both the input samples and the output bins are
/// centered.  sign = -1 is the forward transform
///   X(j) = sum_i x(i) exp(-2 pi i <j - J, i - J> / n)
/// and sign = +1 the unscaled inverse.  Backed by FFTW with the centering
/// handled by exact index rotations, so the result is deterministic.
MatrixXcd centered_dft_2d(const MatrixXcd& in, int sign);

}  // namespace sarcint::fft
