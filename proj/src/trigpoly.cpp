#include "lipa/trigpoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "fft.hpp"
#include "lipa/error.hpp"

namespace lipa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t ipow(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

Box::Box(int d, int N) : d_(d), N_(N) {
  if (d < 1 || d > kMaxDim) fail(ErrorKind::parameter, "dimension must be 1, 2 or 3");
  if (N < 0) fail(ErrorKind::parameter, "box radius must be >= 0");
  size_ = ipow(static_cast<std::size_t>(side()), d);
}

std::size_t Box::index(const Freq& k) const {
  std::size_t idx = 0;
  for (int i = 0; i < d_; ++i) idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(k[i] + N_);
  return idx;
}

Freq Box::freq(std::size_t idx) const {
  Freq k{0, 0, 0};
  const auto s = static_cast<std::size_t>(side());
  for (int i = d_ - 1; i >= 0; --i) {
    k[i] = static_cast<int>(idx % s) - N_;
    idx /= s;
  }
  return k;
}

bool Box::contains(const Freq& k) const {
  for (int i = 0; i < d_; ++i) {
    if (k[i] < -N_ || k[i] > N_) return false;
  }
  for (int i = d_; i < kMaxDim; ++i) {
    if (k[i] != 0) return false;
  }
  return true;
}

int linf_norm(const Freq& k, int d) {
  int m = 0;
  for (int i = 0; i < d; ++i) m = std::max(m, std::abs(k[i]));
  return m;
}

TrigPoly::TrigPoly(int d, int N) : box_(d, N), coeffs_(box_.size()) {}

TrigPoly::TrigPoly(Box box, std::vector<cplx> coeffs, bool real_valued)
    : box_(box), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != box_.size()) {
    fail(ErrorKind::box_mismatch, "coefficient array does not match the box shape");
  }
  if (real_valued) set_real_valued(true);
}

cplx TrigPoly::operator[](const Freq& k) const {
  if (!box_.contains(k)) fail(ErrorKind::domain, "frequency outside the coefficient box");
  return coeffs_[box_.index(k)];
}

cplx& TrigPoly::at(const Freq& k) {
  if (!box_.contains(k)) fail(ErrorKind::domain, "frequency outside the coefficient box");
  real_valued_ = false;
  return coeffs_[box_.index(k)];
}

cplx TrigPoly::coeff_or_zero(const Freq& k) const {
  return box_.contains(k) ? coeffs_[box_.index(k)] : cplx{};
}

double TrigPoly::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    // Negating every component reverses the lexicographic order.
    const cplx mirror = coeffs_[coeffs_.size() - 1 - i];
    worst = std::max(worst, std::abs(mirror - std::conj(coeffs_[i])));
  }
  return worst;
}

void TrigPoly::set_real_valued(bool flag, double tol) {
  if (flag) {
    double scale = 0.0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
    if (hermitian_defect() > tol * std::max(scale, 1.0)) {
      fail(ErrorKind::precondition, "coefficients are not Hermitian-symmetric");
    }
  }
  real_valued_ = flag;
}

bool TrigPoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const cplx& c) { return c == cplx{}; });
}

TrigPoly TrigPoly::resized(int N) const {
  TrigPoly out(dim(), N);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == cplx{}) continue;
    const Freq k = box_.freq(i);
    if (out.box_.contains(k)) out.coeffs_[out.box_.index(k)] = coeffs_[i];
  }
  out.real_valued_ = real_valued_;
  return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  if (other.dim() != dim()) fail(ErrorKind::box_mismatch, "dimension mismatch in sum");
  if (other.radius() > radius()) *this = resized(other.radius());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    if (other.coeffs_[i] == cplx{}) continue;
    coeffs_[box_.index(other.box_.freq(i))] += other.coeffs_[i];
  }
  real_valued_ = real_valued_ && other.real_valued_;
  return *this;
}

TrigPoly& TrigPoly::operator*=(cplx c) {
  for (auto& a : coeffs_) a *= c;
  real_valued_ = real_valued_ && c.imag() == 0.0;
  return *this;
}

TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
TrigPoly operator*(cplx c, TrigPoly a) { return a *= c; }

TrigPoly apply_multiplier(const TrigPoly& f, const std::function<cplx(const Freq&)>& m) {
  std::vector<cplx> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == cplx{}) continue;
    out[i] *= m(f.box().freq(i));
  }
  return TrigPoly(f.box(), std::move(out));
}

std::vector<cplx> evaluate_on_grid(const TrigPoly& f, int M) {
  const int N = f.radius();
  if (M < 2 * N + 1) {
    fail(ErrorKind::aliasing, "grid size " + std::to_string(M) + " aliases radius " + std::to_string(N));
  }
  const int d = f.dim();
  const std::size_t total = ipow(static_cast<std::size_t>(M), d);
  detail::FftBuffer buf(total);
  std::fill(buf.data(), buf.data() + total, cplx{});
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx{}) continue;
    const Freq k = f.box().freq(i);
    std::size_t pos = 0;
    for (int a = 0; a < d; ++a) pos = pos * static_cast<std::size_t>(M) + static_cast<std::size_t>((k[a] + M) % M);
    buf[pos] = coeffs[i];
  }
  detail::backward_dft(buf, d, M);
  return std::vector<cplx>(buf.data(), buf.data() + total);
}

cplx evaluate_at(const TrigPoly& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dim()) fail(ErrorKind::box_mismatch, "point dimension mismatch");
  cplx sum{};
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx{}) continue;
    const Freq k = f.box().freq(i);
    double phase = 0.0;
    for (int a = 0; a < f.dim(); ++a) phase += k[a] * x[a];
    sum += coeffs[i] * std::polar(1.0, kTwoPi * phase);
  }
  return sum;
}

TrigPoly partial_derivative(const TrigPoly& f, const Freq& alpha) {
  for (int i = 0; i < kMaxDim; ++i) {
    if (alpha[i] < 0 || (i >= f.dim() && alpha[i] != 0)) {
      fail(ErrorKind::parameter, "invalid derivative multi-index");
    }
  }
  const int d = f.dim();
  return apply_multiplier(f, [&](const Freq& k) {
    cplx m{1.0, 0.0};
    for (int i = 0; i < d; ++i) {
      for (int e = 0; e < alpha[i]; ++e) m *= cplx{0.0, kTwoPi * k[i]};
    }
    return m;
  });
}

TrigPoly difference(const TrigPoly& f, std::span<const double> h, int r) {
  if (static_cast<int>(h.size()) != f.dim()) fail(ErrorKind::box_mismatch, "shift dimension mismatch");
  if (r < 1) fail(ErrorKind::parameter, "difference order must be >= 1");
  const int d = f.dim();
  return apply_multiplier(f, [&](const Freq& k) {
    double phase = 0.0;
    for (int i = 0; i < d; ++i) phase += k[i] * h[i];
    const cplx base = cplx{1.0, 0.0} - std::polar(1.0, kTwoPi * phase);
    cplx m{1.0, 0.0};
    for (int e = 0; e < r; ++e) m *= base;
    return m;
  });
}

double vallee_poussin_multiplier(const Freq& k, int d, int n) {
  double m = 1.0;
  for (int i = 0; i < d; ++i) {
    const int a = std::abs(k[i]);
    if (a >= 2 * n) return 0.0;
    m *= std::min(1.0, 2.0 - static_cast<double>(a) / n);
  }
  return m;
}

TrigPoly vallee_poussin(const TrigPoly& f, int n) {
  if (n < 1) fail(ErrorKind::parameter, "de la Vallee-Poussin degree must be >= 1");
  const int d = f.dim();
  TrigPoly out(d, std::min(f.radius(), 2 * n));
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx{}) continue;
    const Freq k = f.box().freq(i);
    const double m = vallee_poussin_multiplier(k, d, n);
    if (m != 0.0) out.coeffs()[out.box().index(k)] = coeffs[i] * m;
  }
  // The multiplier is even in k, so Hermitian symmetry survives.
  if (f.real_valued()) out.set_real_valued(true);
  return out;
}

ShellProfile shell_profile(const TrigPoly& f) {
  ShellProfile p;
  p.d = f.dim();
  p.N = f.radius();
  std::vector<double> energy(static_cast<std::size_t>(p.N + 1), 0.0);
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int n = linf_norm(f.box().freq(i), p.d);
    energy[static_cast<std::size_t>(n)] += std::norm(coeffs[i]);
  }
  p.R.resize(energy.size());
  std::transform(energy.begin(), energy.end(), p.R.begin(), [](double e) { return std::sqrt(e); });
  return p;
}

std::int64_t shell_size(int d, int n) {
  if (n < 0) fail(ErrorKind::parameter, "shell index must be >= 0");
  if (n == 0) return 1;
  std::int64_t outer = 1, inner = 1;
  for (int i = 0; i < d; ++i) {
    outer *= 2 * n + 1;
    inner *= 2 * n - 1;
  }
  return outer - inner;
}

TrigPoly spread_over_shells(int d, std::span<const double> R, std::uint64_t seed) {
  if (R.empty()) fail(ErrorKind::parameter, "empty shell profile");
  TrigPoly f(d, static_cast<int>(R.size()) - 1);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  auto c = f.coeffs();
  // Walk the first half of the box and mirror, so a_{-k} = a_k.
  for (std::size_t i = 0; i <= c.size() / 2; ++i) {
    const int n = linf_norm(f.box().freq(i), d);
    const double amp = R[static_cast<std::size_t>(n)] / std::sqrt(static_cast<double>(shell_size(d, n)));
    const double v = coin(rng) ? amp : -amp;
    c[i] = v;
    c[c.size() - 1 - i] = v;
  }
  f.set_real_valued(true);
  return f;
}

double l2_norm(const TrigPoly& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

int sup_grid_size(int N, int oversample) {
  if (oversample < 2) fail(ErrorKind::parameter, "oversample factor must be >= 2");
  const int want = std::max(2 * N + 1, oversample * N);
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(want)));
}

SupNormBracket sup_norm_bracket(const TrigPoly& f, int oversample) {
  const int M = sup_grid_size(f.radius(), oversample);
  const auto samples = evaluate_on_grid(f, M);
  SupNormBracket b;
  for (const auto& s : samples) b.grid_max = std::max(b.grid_max, std::abs(s));
  double gradient = 0.0;
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == cplx{}) continue;
    const Freq k = f.box().freq(i);
    double k2 = 0.0;
    for (int a = 0; a < f.dim(); ++a) k2 += static_cast<double>(k[a]) * k[a];
    gradient += std::abs(coeffs[i]) * kTwoPi * std::sqrt(k2);
  }
  b.upper = b.grid_max + std::sqrt(static_cast<double>(f.dim())) / (2.0 * M) * gradient;
  return b;
}

double sup_norm(const TrigPoly& f, int oversample) {
  return sup_norm_bracket(f, oversample).grid_max;
}

std::vector<Freq> multi_indices(int d, int s) {
  if (d < 1 || d > kMaxDim || s < 0) fail(ErrorKind::parameter, "invalid multi-index request");
  std::vector<Freq> out;
  if (d == 1) {
    out.push_back({s, 0, 0});
  } else if (d == 2) {
    for (int a = s; a >= 0; --a) out.push_back({a, s - a, 0});
  } else {
    for (int a = s; a >= 0; --a) {
      for (int b = s - a; b >= 0; --b) out.push_back({a, b, s - a - b});
    }
  }
  return out;
}

double cs_norm(const TrigPoly& f, int s, int oversample) {
  const double base = sup_norm(f, oversample);
  if (s == 0) return base;
  double worst = 0.0;
  for (const auto& alpha : multi_indices(f.dim(), s)) {
    worst = std::max(worst, sup_norm(partial_derivative(f, alpha), oversample));
  }
  return base + worst;
}

}  // namespace lipa
