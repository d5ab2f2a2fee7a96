#pragma once

#include <complex>
#include <cstddef>

namespace lipa::detail {

/// fftw_malloc-backed buffer of complex samples.
class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n);
  ~FftBuffer();
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  FftBuffer(FftBuffer&& other) noexcept;

  std::complex<double>* data() { return data_; }
  const std::complex<double>* data() const { return data_; }
  std::size_t size() const { return n_; }
  std::complex<double>& operator[](std::size_t i) { return data_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return data_[i]; }

 private:
  std::complex<double>* data_ = nullptr;
  std::size_t n_ = 0;
};

/// In-place unnormalized backward transform x_j = sum_k X_k e^{+2 pi i jk/M}
/// over a d-dimensional M^d array (row-major).
void backward_dft(FftBuffer& buf, int d, int M);

}  // namespace lipa::detail
