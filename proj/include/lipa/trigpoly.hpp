#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lipa {

using cplx = std::complex<double>;

/// Frequency / multi-index; components past the dimension are zero.
using Freq = std::array<int, 3>;

inline constexpr int kMaxDim = 3;

/// The coefficient box [-N, N]^d, flattened lexicographically (k_1 slowest).
class Box {
 public:
  Box() = default;
  Box(int d, int N);

  int dim() const { return d_; }
  int radius() const { return N_; }
  int side() const { return 2 * N_ + 1; }
  std::size_t size() const { return size_; }

  std::size_t index(const Freq& k) const;
  Freq freq(std::size_t idx) const;
  bool contains(const Freq& k) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  int d_ = 1;
  int N_ = 0;
  std::size_t size_ = 1;
};

int linf_norm(const Freq& k, int d);

/// Trigonometric polynomial f(x) = sum_k a_k e^{2 pi i <k,x>} on T^d with a
/// dense coefficient box. The optional real-valued flag asserts Hermitian
/// symmetry a_{-k} = conj(a_k).
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(int d, int N);
  TrigPoly(Box box, std::vector<cplx> coeffs, bool real_valued = false);

  const Box& box() const { return box_; }
  int dim() const { return box_.dim(); }
  int radius() const { return box_.radius(); }

  cplx operator[](const Freq& k) const;
  cplx& at(const Freq& k);
  cplx coeff_or_zero(const Freq& k) const;

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  bool real_valued() const { return real_valued_; }
  /// Sets the flag; throws precondition if the coefficients are not Hermitian.
  void set_real_valued(bool flag, double tol = 1e-12);
  /// max_k |a_{-k} - conj(a_k)|.
  double hermitian_defect() const;

  bool is_zero() const;
  /// Copy into the box of radius N, dropping coefficients outside it.
  TrigPoly resized(int N) const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator*=(cplx c);

 private:
  Box box_;
  std::vector<cplx> coeffs_;
  bool real_valued_ = false;
};

TrigPoly operator+(TrigPoly a, const TrigPoly& b);
TrigPoly operator*(cplx c, TrigPoly a);

/// Coefficientwise multiplication a_k <- m(k) a_k.
TrigPoly apply_multiplier(const TrigPoly& f, const std::function<cplx(const Freq&)>& m);

/// Samples at x_j = j/M (componentwise), flattened with j_1 slowest. M >= 2N+1.
std::vector<cplx> evaluate_on_grid(const TrigPoly& f, int M);

/// Direct evaluation at one point x.
cplx evaluate_at(const TrigPoly& f, std::span<const double> x);

/// Multiplier prod_i (2 pi i k_i)^{alpha_i}.
TrigPoly partial_derivative(const TrigPoly& f, const Freq& alpha);

/// Multiplier (1 - e^{2 pi i <k,h>})^r, i.e. Delta_h^r with Delta_h g = g(x) - g(x+h).
TrigPoly difference(const TrigPoly& f, std::span<const double> h, int r);

/// de la Vallee-Poussin operator V_n: multiplier prod_i min(1, 2 - |k_i|/n) on
/// B_inf(2n), zero outside; output radius min(N, 2n). Requires n >= 1.
TrigPoly vallee_poussin(const TrigPoly& f, int n);

/// Multiplier of V_n at frequency k.
double vallee_poussin_multiplier(const Freq& k, int d, int n);

struct ShellProfile {
  int d = 1;
  int N = 0;
  std::vector<double> R;  // R[n] for n = 0..N
};

ShellProfile shell_profile(const TrigPoly& f);

/// Real-valued polynomial with |a_k| = R_n / sqrt(#shell n) on every shell and
/// seeded random signs, even in k so that it is Hermitian.
TrigPoly spread_over_shells(int d, std::span<const double> R, std::uint64_t seed);

/// Number of lattice points with ||k||_inf = n in dimension d.
std::int64_t shell_size(int d, int n);

/// Coefficient l2 norm (sum |a_k|^2)^{1/2}.
double l2_norm(const TrigPoly& f);

/// Grid size used by sup-norm estimates: bit_ceil(max(2N+1, oversample*N)).
int sup_grid_size(int N, int oversample);

struct SupNormBracket {
  double grid_max = 0.0;  // certified lower bound
  double upper = 0.0;     // grid_max + mean-value correction
};

/// Max |sample| on the oversampled grid, plus the gradient-corrected upper bound
/// grid_max + (sqrt(d) / 2M) * sum_k |a_k| 2 pi |k|.
SupNormBracket sup_norm_bracket(const TrigPoly& f, int oversample = 8);
double sup_norm(const TrigPoly& f, int oversample = 8);

/// All multi-indices alpha in N_0^d with |alpha| = s.
std::vector<Freq> multi_indices(int d, int s);

/// ||f||_C + max_{|alpha|=s} ||d^alpha f||_C, with ||f||_{C^0} = ||f||_C.
double cs_norm(const TrigPoly& f, int s, int oversample = 8);

}  // namespace lipa
