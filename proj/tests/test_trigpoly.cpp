#include <doctest.h>

#include <cmath>
#include <random>

#include "lipa/error.hpp"
#include "lipa/trigpoly.hpp"
#include "support.hpp"

using namespace lipa;
using lipa::testing::kPi;
using lipa::testing::rel_diff;

namespace {

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double coeff_energy(const TrigPoly& f) {
  double s = 0.0;
  for (auto c : f.coeffs()) s += std::norm(c);
  return s;
}

}  // namespace

TEST_CASE("box indexing round-trips") {
  for (int d = 1; d <= 3; ++d) {
    const Box b(d, 3);
    CHECK(b.size() == static_cast<std::size_t>(std::pow(7, d)));
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index(b.freq(i)) == i);
    Freq first = b.freq(0);
    for (int a = 0; a < d; ++a) CHECK(first[a] == -3);
  }
  CHECK(Box(2, 1).freq(1) == Freq{-1, 0, 0});
}

TEST_CASE("evaluate_on_grid examples") {
  TrigPoly one(1, 0);
  one.at({0, 0, 0}) = 1.0;
  for (auto v : evaluate_on_grid(one, 4)) CHECK(std::abs(v - cplx{1.0}) < 1e-15);

  TrigPoly wave(1, 1);
  wave.at({1, 0, 0}) = 1.0;
  const auto s = evaluate_on_grid(wave, 4);
  const cplx expect[4] = {1.0, cplx{0, 1}, -1.0, cplx{0, -1}};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(s[j] - expect[j]) < 1e-15);

  CHECK_THROWS_AS((void)evaluate_on_grid(wave, 2), Error);
}

TEST_CASE("fast transform agrees with direct summation") {
  std::mt19937_64 rng(1);
  struct Case { int d, N, M; };
  for (auto [d, N, M] : {Case{1, 20, 64}, Case{1, 31, 64}, Case{2, 7, 16}, Case{2, 12, 32}, Case{3, 3, 8}}) {
    const auto f = lipa::testing::random_poly(rng, d, N);
    CHECK(max_abs_diff(evaluate_on_grid(f, M), lipa::testing::direct_grid(f, M)) < 1e-10);
  }
}

TEST_CASE("evaluate_at agrees with grid samples") {
  std::mt19937_64 rng(2);
  const auto f = lipa::testing::random_poly(rng, 2, 5);
  const auto g = evaluate_on_grid(f, 16);
  const double x[2] = {3.0 / 16, 11.0 / 16};
  CHECK(std::abs(evaluate_at(f, x) - g[3 * 16 + 11]) < 1e-11);
}

TEST_CASE("Parseval on alias-free grids") {
  std::mt19937_64 rng(4);
  for (int d = 1; d <= 3; ++d) {
    const int N = d == 3 ? 3 : 9;
    const auto f = lipa::testing::random_poly(rng, d, N);
    for (int M : {2 * N + 1, 2 * N + 4, 4 * N}) {
      const auto s = evaluate_on_grid(f, M);
      double mean = 0.0;
      for (auto v : s) mean += std::norm(v);
      mean /= static_cast<double>(s.size());
      CHECK(rel_diff(mean, coeff_energy(f)) < 1e-10);
    }
  }
}

TEST_CASE("partial_derivative") {
  TrigPoly w(1, 1);
  w.at({1, 0, 0}) = 1.0;
  const auto dw = partial_derivative(w, {1, 0, 0});
  CHECK(std::abs(dw[{1, 0, 0}] - cplx{0, 2 * kPi}) < 1e-13);

  std::mt19937_64 rng(5);
  const auto f = lipa::testing::random_poly(rng, 2, 4);
  const auto id = partial_derivative(f, {0, 0, 0});
  for (std::size_t i = 0; i < f.box().size(); ++i) CHECK(id.coeffs()[i] == f.coeffs()[i]);

  TrigPoly g(2, 2);
  g.at({1, 2, 0}) = 1.0;
  const auto dg = partial_derivative(g, {1, 1, 0});
  CHECK(std::abs(dg[{1, 2, 0}] - cplx{-8 * kPi * kPi, 0}) < 1e-12);
}

TEST_CASE("difference") {
  TrigPoly w(1, 1);
  w.at({1, 0, 0}) = 1.0;
  const double h[1] = {0.5};
  for (int r = 1; r <= 3; ++r) CHECK(std::abs(difference(w, h, r)[{1, 0, 0}] - std::pow(2.0, r)) < 1e-12);

  std::mt19937_64 rng(6);
  const auto f = lipa::testing::random_poly(rng, 2, 6);
  const double zero[2] = {0.0, 0.0};
  CHECK(difference(f, zero, 1).is_zero());

  SUBCASE("grid shift oracle") {
    const int M = 16;
    const int shift[2] = {3, 7};
    const double hh[2] = {3.0 / M, 7.0 / M};
    const auto base = evaluate_on_grid(f, M);
    const auto diff = evaluate_on_grid(difference(f, hh, 1), M);
    double worst = 0.0;
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j < M; ++j) {
        const cplx expect = base[i * M + j] - base[((i + shift[0]) % M) * M + (j + shift[1]) % M];
        worst = std::max(worst, std::abs(diff[i * M + j] - expect));
      }
    }
    CHECK(worst < 1e-10);
  }
  SUBCASE("power law") {
    const double hh[2] = {0.123, -0.31};
    auto twice = difference(difference(f, hh, 1), hh, 1);
    auto direct = difference(f, hh, 2);
    for (std::size_t i = 0; i < f.box().size(); ++i) CHECK(std::abs(twice.coeffs()[i] - direct.coeffs()[i]) < 1e-11);
  }
  CHECK_THROWS_AS((void)difference(f, zero, 0), Error);
}

TEST_CASE("vallee_poussin") {
  std::mt19937_64 rng(8);
  SUBCASE("identity on [-n,n]^d") {
    for (int d = 1; d <= 3; ++d) {
      const auto f = lipa::testing::random_poly(rng, d, 3);
      const auto v = vallee_poussin(f, 3);
      CHECK(v.radius() == 3);
      for (std::size_t i = 0; i < f.box().size(); ++i) CHECK(v.coeffs()[i] == f.coeffs()[i]);
    }
  }
  SUBCASE("multiplier values") {
    CHECK(vallee_poussin_multiplier({6, 0, 0}, 1, 4) == 0.5);
    CHECK(vallee_poussin_multiplier({8, 0, 0}, 1, 4) == 0.0);
    CHECK(vallee_poussin_multiplier({-5, 6, 0}, 2, 4) == doctest::Approx(0.75 * 0.5));
    TrigPoly w(1, 10);
    w.at({6, 0, 0}) = 1.0;
    CHECK(vallee_poussin(w, 4)[{6, 0, 0}] == cplx{0.5});
  }
  SUBCASE("spectrum lands in B(2n)") {
    const auto f = lipa::testing::random_poly(rng, 2, 12);
    const auto v = vallee_poussin(f, 3);
    CHECK(v.radius() == 6);
    for (std::size_t i = 0; i < v.box().size(); ++i) {
      if (linf_norm(v.box().freq(i), 2) == 6) CHECK(v.coeffs()[i] == cplx{});
    }
  }
  SUBCASE("linear and commutes with derivatives") {
    const auto f = lipa::testing::random_poly(rng, 2, 9);
    const auto g = lipa::testing::random_poly(rng, 2, 9);
    const auto lhs = vallee_poussin(f + cplx{2.0, -1.0} * g, 4);
    const auto rhs = vallee_poussin(f, 4) + cplx{2.0, -1.0} * vallee_poussin(g, 4);
    for (std::size_t i = 0; i < lhs.box().size(); ++i) CHECK(std::abs(lhs.coeffs()[i] - rhs.coeffs()[i]) < 1e-12);

    const Freq a{1, 2, 0};
    const auto dv = partial_derivative(vallee_poussin(f, 4), a);
    const auto vd = vallee_poussin(partial_derivative(f, a), 4);
    for (std::size_t i = 0; i < dv.box().size(); ++i) CHECK(std::abs(dv.coeffs()[i] - vd.coeffs()[i]) < 1e-9);

    const double h[2] = {0.2, 0.05};
    const auto dd = partial_derivative(difference(f, h, 2), a);
    const auto ddd = difference(partial_derivative(f, a), h, 2);
    for (std::size_t i = 0; i < dd.box().size(); ++i) CHECK(std::abs(dd.coeffs()[i] - ddd.coeffs()[i]) < 1e-9);
  }
  SUBCASE("real flag is preserved") {
    const auto f = lipa::testing::random_poly(rng, 2, 6, true);
    CHECK(vallee_poussin(f, 2).real_valued());
  }
  CHECK_THROWS_AS((void)vallee_poussin(TrigPoly(1, 2), 0), Error);
}

TEST_CASE("shell_profile") {
  TrigPoly f(1, 1);
  f.at({1, 0, 0}) = 3.0;
  f.at({-1, 0, 0}) = 4.0;
  CHECK(shell_profile(f).R[1] == doctest::Approx(5.0));

  TrigPoly g(2, 2);
  int count = 0;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      if (std::max(std::abs(i), std::abs(j)) == 1) {
        g.at({i, j, 0}) = 1.0;
        ++count;
      }
    }
  }
  REQUIRE(count == 8);
  const auto pg = shell_profile(g);
  CHECK(pg.R[1] == doctest::Approx(std::sqrt(8.0)));
  CHECK(pg.R[0] == 0.0);
  CHECK(pg.R[2] == 0.0);

  for (double r : shell_profile(TrigPoly(3, 2)).R) CHECK(r == 0.0);

  std::mt19937_64 rng(9);
  for (int d = 1; d <= 3; ++d) {
    const auto h = lipa::testing::random_poly(rng, d, d == 3 ? 4 : 10);
    const auto prof = shell_profile(h);
    CHECK(prof.R.size() == static_cast<std::size_t>(h.radius() + 1));
    double s = 0.0;
    for (double r : prof.R) s += r * r;
    CHECK(rel_diff(s, coeff_energy(h)) < 1e-10);
    CHECK(rel_diff(l2_norm(h), std::sqrt(coeff_energy(h))) < 1e-12);
  }
}

TEST_CASE("sup and C^s norms") {
  TrigPoly w(1, 3);
  w.at({3, 0, 0}) = 1.0;
  for (int os : {2, 4, 8, 16}) CHECK(sup_norm(w, os) == doctest::Approx(1.0).epsilon(1e-12));

  TrigPoly c(1, 1);
  c.at({1, 0, 0}) = 0.5;
  c.at({-1, 0, 0}) = 0.5;
  c.set_real_valued(true);
  CHECK(cs_norm(c, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cs_norm(c, 1) == doctest::Approx(1.0 + 2 * kPi).epsilon(1e-12));
  CHECK(cs_norm(c, 2) == doctest::Approx(1.0 + 4 * kPi * kPi).epsilon(1e-12));

  SUBCASE("equal-modulus shell in d=2") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
    const double amp = 0.3;
    TrigPoly g(2, 1);
    for (std::size_t i = 0; i < g.box().size(); ++i) {
      if (linf_norm(g.box().freq(i), 2) == 1) g.coeffs()[i] = std::polar(amp, phase(rng));
    }
    CHECK(sup_norm(g) <= 8 * amp + 1e-12);
    TrigPoly aligned(2, 1);
    for (std::size_t i = 0; i < aligned.box().size(); ++i) {
      if (linf_norm(aligned.box().freq(i), 2) == 1) aligned.coeffs()[i] = amp;
    }
    CHECK(sup_norm(aligned) == doctest::Approx(8 * amp).epsilon(1e-12));
  }
  SUBCASE("bracket encloses the finest-grid value") {
    std::mt19937_64 rng(12);
    for (int d = 1; d <= 2; ++d) {
      const auto f = lipa::testing::random_poly(rng, d, 8);
      const auto coarse = sup_norm_bracket(f, 2);
      const double fine = sup_norm(f, 32);
      CHECK(coarse.grid_max <= fine + 1e-12);
      CHECK(fine <= coarse.upper + 1e-12);
    }
  }
  SUBCASE("norm axioms on samples") {
    std::mt19937_64 rng(13);
    const auto f = lipa::testing::random_poly(rng, 2, 6);
    const auto g = lipa::testing::random_poly(rng, 2, 6);
    CHECK(sup_norm(cplx{-2.5, 0} * f) == doctest::Approx(2.5 * sup_norm(f)).epsilon(1e-12));
    CHECK(sup_norm(f + g) <= sup_norm(f) + sup_norm(g) + 1e-12);
    CHECK(sup_norm(TrigPoly(2, 6)) == 0.0);
  }
  CHECK(multi_indices(2, 2).size() == 3);
  CHECK(multi_indices(3, 2).size() == 6);
  CHECK(multi_indices(3, 0).size() == 1);
  CHECK_THROWS_AS((void)sup_norm(w, 1), Error);
}

TEST_CASE("hermitian flag") {
  std::mt19937_64 rng(14);
  auto f = lipa::testing::random_poly(rng, 2, 4, true);
  CHECK(f.hermitian_defect() < 1e-15);
  for (auto v : evaluate_on_grid(f, 16)) CHECK(std::abs(v.imag()) < 1e-12);
  auto g = lipa::testing::random_poly(rng, 2, 4);
  CHECK_THROWS_AS(g.set_real_valued(true), Error);
  CHECK_THROWS_AS(((void)f[Freq{5, 0, 0}]), Error);
  CHECK(f.coeff_or_zero({5, 0, 0}) == cplx{});
  const auto big = f.resized(6);
  CHECK(big[Freq{1, -2, 0}] == f[Freq{1, -2, 0}]);
  CHECK(big.real_valued());
}
