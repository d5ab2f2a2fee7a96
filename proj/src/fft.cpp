#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>
#include <utility>

namespace lipa::detail {

FftBuffer::FftBuffer(std::size_t n) : n_(n) {
  data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * (n ? n : 1)));
  if (data_ == nullptr) throw std::bad_alloc();
}

FftBuffer::~FftBuffer() {
  if (data_ != nullptr) fftw_free(data_);
}

FftBuffer::FftBuffer(FftBuffer&& other) noexcept
    : data_(std::exchange(other.data_, nullptr)), n_(std::exchange(other.n_, 0)) {}

namespace {

// Planner calls are not thread-safe in FFTW; executing a finished plan is.
std::mutex planner_mutex;

fftw_plan plan_for(int d, int M, FftBuffer& buf) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard lock(planner_mutex);
  auto it = cache.find({d, M});
  if (it != cache.end()) return it->second;
  int dims[3] = {M, M, M};
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  // FFTW_ESTIMATE leaves the array untouched during planning.
  fftw_plan plan = fftw_plan_dft(d, dims, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  cache.emplace(std::make_pair(d, M), plan);
  return plan;
}

}  // namespace

void backward_dft(FftBuffer& buf, int d, int M) {
  fftw_plan plan = plan_for(d, M, buf);
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace lipa::detail
