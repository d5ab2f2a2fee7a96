#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "lipa/error.hpp"
#include "lipa/trigpoly.hpp"

namespace lipa::cli {

struct FamilySpec {
  std::string name = "decaying";  // wave | random | decaying
  int d = 1;
  int N = 32;
  int freq = 1;        // wave: e^{2 pi i freq x_1}
  double decay = 1.0;  // decaying: |g_k| = |k|_inf^{-decay}
};

/// Real-valued coefficients drawn with rng, folded to be Hermitian; `amp(n)`
/// scales the shell |k|_inf = n.
template <class Amp>
TrigPoly hermitian_poly(int d, int N, std::uint64_t seed, Amp amp, bool gaussian) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ph(0.0, 2 * std::numbers::pi);
  TrigPoly f(d, N);
  auto c = f.coeffs();
  const std::size_t mid = c.size() / 2;
  for (std::size_t i = 0; i < mid; ++i) {
    const double a = amp(linf_norm(f.box().freq(i), d));
    c[i] = gaussian ? a * cplx{g(rng), g(rng)} : std::polar(a, ph(rng));
    c[c.size() - 1 - i] = std::conj(c[i]);
  }
  c[mid] = gaussian ? g(rng) : 0.5;
  f.set_real_valued(true);
  return f;
}

inline TrigPoly synthesize(const FamilySpec& s, std::uint64_t seed) {
  if (s.d < 1 || s.d > kMaxDim) fail(ErrorKind::parameter, "d must be 1, 2 or 3");
  if (s.N < 1) fail(ErrorKind::parameter, "N must be >= 1");
  if (s.name == "wave") {
    if (s.freq < 0 || s.freq > s.N) fail(ErrorKind::parameter, "wave frequency must lie in [0, N]");
    TrigPoly f(s.d, s.N);
    f.at({s.freq, 0, 0}) = 1.0;
    return f;
  }
  if (s.name == "random") return hermitian_poly(s.d, s.N, seed, [](int) { return 1.0; }, true);
  if (s.name == "decaying") {
    return hermitian_poly(s.d, s.N, seed, [&](int n) { return std::pow(double(n), -s.decay); }, false);
  }
  fail(ErrorKind::parameter, "unknown family '" + s.name + "'");
}

}  // namespace lipa::cli
