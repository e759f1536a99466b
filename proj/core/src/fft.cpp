#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace eft::detail {

namespace {

// FFTW's planner mutates global state; execution on the planned array is the
// only thread-safe part, so serialize the whole transform.
std::mutex fftw_mutex;

void transform(Eigen::MatrixXcd& m, int length, int howmany, int stride, int dist,
               bool forward) {
  if (length < 1 || howmany < 1) return;
  const double scale = 1.0 / std::sqrt(static_cast<double>(length));
  if (length == 1) {
    m *= scale;
    return;
  }
  std::lock_guard<std::mutex> lock(fftw_mutex);
  auto* data = reinterpret_cast<fftw_complex*>(m.data());
  fftw_plan plan =
      fftw_plan_many_dft(1, &length, howmany, data, nullptr, stride, dist, data, nullptr,
                         stride, dist, forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  m *= scale;
}

}  // namespace

void dft_rows_inplace(Eigen::MatrixXcd& m, bool forward) {
  // Column-major storage: a row is strided by rows(), consecutive rows start 1 apart.
  transform(m, static_cast<int>(m.cols()), static_cast<int>(m.rows()),
            static_cast<int>(m.rows()), 1, forward);
}

void dft_cols_inplace(Eigen::MatrixXcd& m, bool forward) {
  transform(m, static_cast<int>(m.rows()), static_cast<int>(m.cols()), 1,
            static_cast<int>(m.rows()), forward);
}

}  // namespace eft::detail
