#include "sarcint/fft.hpp"

#include <algorithm>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace sarcint::fft {
namespace {

std::mutex planner_mutex;  // FFTW's planner is not thread safe

// Rotate so that the centered origin floor(n/2) moves to index 0 (forward)
// or back (inverse).  Exact permutations: no twiddle-factor roundoff.
void rotate_rows(MatrixXcd& m, bool inverse) {
  const Eigen::Index n = m.rows();
  const Eigen::Index shift = inverse ? n - n / 2 : n / 2;
  MatrixXcd tmp(n, m.cols());
  for (Eigen::Index i = 0; i < n; ++i) tmp.row(i) = m.row((i + shift) % n);
  m.swap(tmp);
}

void rotate_cols(MatrixXcd& m, bool inverse) {
  const Eigen::Index n = m.cols();
  const Eigen::Index shift = inverse ? n - n / 2 : n / 2;
  MatrixXcd tmp(m.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) tmp.col(j) = m.col((j + shift) % n);
  m.swap(tmp);
}

}  // namespace

MatrixXcd centered_dft_2d(const MatrixXcd& in, int sign) {
  if (in.size() == 0) throw InvalidInput("centered_dft_2d: empty input");
  if (sign != 1 && sign != -1) throw InvalidInput("centered_dft_2d: sign must be +-1");
  const int rows = static_cast<int>(in.rows());
  const int cols = static_cast<int>(in.cols());

  MatrixXcd work = in;
  rotate_rows(work, false);
  rotate_cols(work, false);

  // FFTW wants row-major; Eigen is column-major, so transpose on the way in
  // and out (equivalently: transform with swapped dimensions).
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) buf[static_cast<std::size_t>(i) * cols + j] = work(i, j);
  }
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_plan plan = fftw_plan_dft_2d(rows, cols, reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()),
                                      sign == -1 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("centered_dft_2d: fftw planning failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) work(i, j) = buf[static_cast<std::size_t>(i) * cols + j];
  }

  rotate_rows(work, true);
  rotate_cols(work, true);
  return work;
}

}  // namespace sarcint::fft
