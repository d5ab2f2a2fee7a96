#include <doctest.h>

#include <cmath>
#include <random>

#include "lipa/error.hpp"
#include "lipa/kkdl.hpp"
#include "lipa/smoothness.hpp"
#include "support.hpp"

using namespace lipa;
using lipa::testing::kPi;

namespace {

// Real-valued g with |g_k| = |k|_inf^{-decay} and random phases.
TrigPoly decaying_poly(std::mt19937_64& rng, int d, int N, double decay) {
  std::uniform_real_distribution<double> ph(0.0, 2 * kPi);
  TrigPoly g(d, N);
  auto c = g.coeffs();
  for (std::size_t i = 0; i < c.size() / 2; ++i) {
    const int n = linf_norm(g.box().freq(i), d);
    c[i] = std::polar(std::pow(double(n), -decay), ph(rng));
    c[c.size() - 1 - i] = std::conj(c[i]);
  }
  c[c.size() / 2] = 0.5;
  g.set_real_valued(true);
  return g;
}

}  // namespace

TEST_CASE("kkdl_flatten basics") {
  TrigPoly one(1, 3);
  one.at({2, 0, 0}) = 0.8;
  const auto r = kkdl_flatten(one, 0, 4, 1);
  CHECK(std::abs(r.poly[{2, 0, 0}]) == 0.8);
  CHECK(r.poly[{2, 0, 0}].imag() == 0.0);
  CHECK(r.achieved == doctest::Approx(0.8));
  CHECK(r.ratio == doctest::Approx(1.0));

  const auto empty = kkdl_flatten(TrigPoly(2, 3), 1, 4, 1);
  CHECK(empty.poly.is_zero());
  CHECK(empty.ratio == 0.0);
  CHECK_THROWS_AS((void)kkdl_flatten(one, 0, 0, 1), Error);
}

TEST_CASE("kkdl_flatten on a two-point shell matches exhaustive search") {
  for (int n0 : {1, 3, 7}) {
    TrigPoly c(1, n0);
    c.at({n0, 0, 0}) = 1.0;
    c.at({-n0, 0, 0}) = 1.0;
    double best = INFINITY;
    for (int s1 : {-1, 1}) {
      for (int s2 : {-1, 1}) {
        TrigPoly h(1, n0);
        h.at({n0, 0, 0}) = double(s1);
        h.at({-n0, 0, 0}) = double(s2);
        best = std::min(best, sup_norm(h));
      }
    }
    const auto r = kkdl_flatten(c, 0, 32, 5);
    CHECK(r.achieved == doctest::Approx(best));
    CHECK(r.ratio <= std::sqrt(2.0) + 1e-9);
  }
}

TEST_CASE("kkdl_flatten constant grows slowly on uniform boxes") {
  for (int n : {8, 16, 32}) {
    TrigPoly c(2, n);
    for (auto& a : c.coeffs()) a = 1.0;
    const auto r = kkdl_flatten(c, 0, 32, 9);
    const double logs = std::sqrt(std::log(double(c.box().size())));
    CHECK(r.ratio / logs > 0.3);
    CHECK(r.ratio / logs < 3.0);
    for (auto v : r.poly.coeffs()) CHECK(std::abs(v) == 1.0);
  }
}

TEST_CASE("build_block") {
  const auto omega = Majorant::power_log(1.0, 0);
  const auto seq = discretize(omega, 5.0, 2.0, 200);
  REQUIRE(seq.mu == std::vector<std::int64_t>{1, 6, 31, 156});

  SUBCASE("one shell in the block 6..30") {
    TrigPoly a(1, 30);
    a.at({10, 0, 0}) = 0.25;
    a.at({-10, 0, 0}) = 0.5;
    const auto b = build_block(a, seq, 1, omega, 0, 2, 3);
    // V_30 multiplier at |k|=10 is 1, V_3 multiplier is 0, so S = h on the shell
    const double outer = vallee_poussin_multiplier({10, 0, 0}, 1, 30);
    const double inner = vallee_poussin_multiplier({10, 0, 0}, 1, 3);
    CHECK(outer * (1.0 - inner) == 1.0);
    CHECK(std::abs(b.poly[{10, 0, 0}]) == 0.25);
    CHECK(std::abs(b.poly[{-10, 0, 0}]) == 0.5);
    CHECK(b.poly[{10, 0, 0}].imag() == 0.0);
    CHECK(b.k == 2);
    CHECK(b.mu_lo == 6);
    CHECK(b.mu_hi == 30);
  }
  SUBCASE("empty amplitudes") {
    const auto b = build_block(TrigPoly(2, 30), seq, 1, omega, 1, 2, 3);
    CHECK(b.poly.is_zero());
    CHECK(b.achieved_cl == 0.0);
    CHECK(b.achieved_clr == 0.0);
  }
  SUBCASE("leakage is rejected") {
    TrigPoly a(1, 30);
    a.at({3, 0, 0}) = 1.0;
    CHECK_THROWS_AS((void)build_block(a, seq, 1, omega, 0, 2, 3), Error);
  }
  SUBCASE("Bernstein step on I-blocks") {
    std::mt19937_64 rng(31);
    const auto g = decaying_poly(rng, 2, 30, 1.0);
    TrigPoly a(2, 30);
    for (std::size_t i = 0; i < a.box().size(); ++i) a.coeffs()[i] = std::abs(g.coeffs()[i]);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto w = restrict_to_window(a, int(seq.block_begin(k)), int(seq.block_end(k)));
      for (int l : {0, 1}) {
        const auto b = build_block(w, seq, k, omega, l, 2, 17);
        if (b.mode != BlockLabel::I || b.poly.is_zero()) continue;
        const double bound = std::pow(2 * kPi, 2) + 1.0;
        CHECK(b.achieved_clr <= bound * std::pow(double(b.mu_hi), 2) * b.achieved_cl * 1.05);
      }
    }
  }
}

TEST_CASE("verify_domination") {
  std::mt19937_64 rng(32);
  const auto g = lipa::testing::random_poly(rng, 2, 4);
  CHECK(verify_domination(g, g).margin == 0.0);
  CHECK(verify_domination(g, g).ok);
  double smallest = INFINITY;
  for (auto c : g.coeffs()) smallest = std::min(smallest, std::abs(c));
  const auto twice = verify_domination(2.0 * g, g);
  CHECK(twice.margin == doctest::Approx(smallest));
  CHECK_FALSE(verify_domination(0.5 * g, g).ok);
  CHECK(verify_domination(g.resized(6), g).ok);
  CHECK_THROWS_AS((void)verify_domination(g.resized(3), g), Error);
  CHECK_THROWS_AS((void)verify_domination(TrigPoly(1, 4), g), Error);
}

TEST_CASE("quasiconcave envelope") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r : {1, 2}) {
    std::vector<std::pair<double, double>> samples;
    for (int j = 0; j < 8; ++j) samples.emplace_back(std::ldexp(1.0, -j), u(rng) + 0.01);
    const auto env = quasiconcave_envelope(samples, r, 256);
    CHECK(validate_quasiconcave(env, r, 256).pass);
    for (const auto& [t, m] : samples) CHECK(env(t) >= m);
    // least: some sample pins the value at every dyadic point it dominates
    CHECK(env(1.0) == doctest::Approx(std::max_element(samples.begin(), samples.end(), [](auto a, auto b) {
                                        return a.second < b.second;
                                      })->second));
  }
}

TEST_CASE("construct_dominating on a single wave") {
  for (int d : {1, 2}) {
    TrigPoly g(d, 8);
    g.at({5, 0, 0}) = cplx{0.3, 0.4};
    const auto rep = construct_dominating(g, 1, 0, 7);
    CHECK(rep.domination_ok);
    CHECK(rep.domination_margin == 0.0);
    CHECK(rep.windows_ok);
    for (std::size_t i = 0; i < g.box().size(); ++i) CHECK(std::abs(rep.f.coeffs()[i]) == std::abs(g.coeffs()[i]));
    for (const auto& [t, ratio] : rep.modulus_ratios) {
      CHECK(ratio <= 1.05);
      CHECK(ratio >= 0.5);
    }
  }
}

TEST_CASE("construct_dominating end to end") {
  std::mt19937_64 rng(34);
  for (int d : {1, 2}) {
    for (double decay : {1.0, 2.5}) {
      const int N = d == 1 ? 128 : 32;
      const auto g = decaying_poly(rng, d, N, decay + (d - 1) * 0.5);
      const auto rep = construct_dominating(g, 1, 0, 11);
      CHECK(rep.domination_ok);
      CHECK(rep.domination_margin >= 0.0);
      CHECK(rep.windows_ok);
      CHECK(rep.disjoint_ok);
      CHECK(verify_discretizing_properties(rep.seq, rep.omega).ok());
      for (std::size_t i = 0; i < rep.modulus_ratios.size(); ++i) {
        CHECK(rep.modulus_ratios[i].second >= rep.lower_ratios[i].second * (1 - 1e-12));
        CHECK(rep.modulus_ratios[i].second < 50.0);
        CHECK(rep.lower_ratios[i].second > 0.2);
      }
      const auto again = construct_dominating(g, 1, 0, 11);
      for (std::size_t i = 0; i < rep.f.box().size(); ++i) CHECK(again.f.coeffs()[i] == rep.f.coeffs()[i]);
    }
  }
}

TEST_CASE("rapidly decaying shells give few blocks") {
  std::mt19937_64 rng(35);
  const auto g = decaying_poly(rng, 1, 64, 4.0);
  const auto rep = construct_dominating(g, 1, 0, 3);
  CHECK(rep.domination_ok);
  CHECK(rep.seq.blocks() <= 2);
}
