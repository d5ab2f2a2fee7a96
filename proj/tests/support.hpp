#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// code path it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lipa/majorant.hpp"
#include "lipa/trigpoly.hpp"

namespace lipa::testing {

inline constexpr double kPi = std::numbers::pi;

/// Random r-quasiconcave table: omega_{n+1} = omega_n (n/(n+1))^{r u_n} with
/// u_n held constant over random-length runs, so both I- and J-type stretches
/// appear.
inline std::vector<double> random_quasiconcave_table(std::mt19937_64& rng, double r, std::int64_t n) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::uniform_int_distribution<int> run(5, 400);
  std::vector<double> out(static_cast<std::size_t>(n));
  out[0] = 1.0;
  double slope = u(rng);
  int left = run(rng);
  for (std::int64_t i = 1; i < n; ++i) {
    if (--left == 0) {
      slope = u(rng);
      left = run(rng);
    }
    const double x = static_cast<double>(i);
    out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i - 1)] * std::pow(x / (x + 1.0), r * slope);
  }
  return out;
}

/// Literal transcription of the greedy recursion with a plain linear scan.
template <class W>
std::vector<std::int64_t> oracle_discretize(W omega, double r, double lambda, std::int64_t nmax) {
  std::vector<std::int64_t> mu{1};
  for (;;) {
    const std::int64_t m = mu.back();
    const double wm = omega(m);
    const double sm = std::pow(static_cast<double>(m), r) * wm;
    std::int64_t next = 0;
    for (std::int64_t n = 1; n <= nmax && next == 0; ++n) {
      const double wn = omega(n);
      if (std::pow(static_cast<double>(n), r) * wn > lambda * sm && lambda * wn < wm) next = n;
    }
    if (next == 0) return mu;
    mu.push_back(next);
  }
}

/// O(M^d * box) direct summation of the Fourier series on the grid j/M.
inline std::vector<cplx> direct_grid(const TrigPoly& f, int M) {
  const int d = f.dim();
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(M);
  std::vector<cplx> out(total);
  for (std::size_t j = 0; j < total; ++j) {
    std::size_t rem = j;
    int idx[3] = {0, 0, 0};
    for (int a = d - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % static_cast<std::size_t>(M));
      rem /= static_cast<std::size_t>(M);
    }
    cplx sum{};
    for (std::size_t i = 0; i < f.box().size(); ++i) {
      const cplx c = f.coeffs()[i];
      if (c == cplx{}) continue;
      const Freq k = f.box().freq(i);
      long long phase = 0;
      for (int a = 0; a < d; ++a) phase += static_cast<long long>(k[a]) * idx[a];
      const long long red = ((phase % M) + M) % M;
      sum += c * std::polar(1.0, 2.0 * kPi * static_cast<double>(red) / M);
    }
    out[j] = sum;
  }
  return out;
}

inline TrigPoly random_poly(std::mt19937_64& rng, int d, int N, bool real = false) {
  std::normal_distribution<double> g(0.0, 1.0);
  TrigPoly f(d, N);
  auto c = f.coeffs();
  for (auto& a : c) a = cplx{g(rng), g(rng)};
  if (real) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const std::size_t j = c.size() - 1 - i;
      if (j < i) break;
      if (j == i) {
        c[i] = cplx{c[i].real(), 0.0};
      } else {
        c[j] = std::conj(c[i]);
      }
    }
    f.set_real_valued(true);
  }
  return f;
}

/// Composite Simpson rule with n (even) panels.
template <class F>
double simpson(F g, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace lipa::testing
