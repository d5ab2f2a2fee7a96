#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lipa/majorant.hpp"
#include "lipa/trigpoly.hpp"

namespace lipa {

enum class NormKind { l2, sup };

const char* to_string(NormKind q);

struct ModulusQuery {
  int r = 1;
  int l = 0;
  NormKind q = NormKind::l2;
  std::vector<double> t_grid;  // values in (0,1], any order
  int direction_count = 16;    // ignored for d = 1
  int oversample = 8;          // sup-norm grid factor, q = sup only
  int radii_per_octave = 4;
};

struct ModulusPoint {
  double t = 0.0;
  double value = 0.0;
  std::array<double, 3> argmax_h{};
  Freq argmax_alpha{};
};

/// Geometric grid from 1/2 down to 1/N with `per_octave` points per halving,
/// returned in decreasing order; always contains 1/2 and 1/N.
std::vector<double> default_t_grid(int N, int per_octave = 4);

/// Unit directions used to sample h: +1 for d = 1, `count` equi-angular vectors
/// over [0, pi) for d = 2, and for d = 3 the coordinate axes followed by a
/// Fibonacci set of `count` points on the upper hemisphere.
std::vector<std::array<double, 3>> direction_set(int d, int count);

/// omega_r(D^l f, t)_q on query.t_grid. The sup over 0 < |h| < t is taken as a
/// max over |h| <= t (the norm is continuous in h) on the sampled radii and
/// directions, and over all |alpha| = l; values are monotone in t by
/// construction since every sampled radius below t is included.
std::vector<ModulusPoint> modulus(const TrigPoly& f, const ModulusQuery& query);

/// sup_t omega_r(D^l f, t)_2 / omega(t) over query.t_grid (q is forced to 2).
double lip_functional_i(const TrigPoly& f, const Majorant& omega, const ModulusQuery& query);

/// max_N (sum_n |R_n n^l min(1, n^r/N^r)|^2)^{1/2} / omega(1/N). An empty
/// N_grid means N = 1..N_box plus the sentinel 4 N_box when omega covers it.
double lip_functional_ii(const ShellProfile& profile, const Majorant& omega, int r, int l,
                         std::vector<std::int64_t> N_grid = {});

struct FunctionalIII {
  double value = 0.0;
  std::vector<std::string> warnings;
};

FunctionalIII lip_functional_iii(const ShellProfile& profile, const Majorant& omega,
                                 const DiscretizingSequence& seq, int r, int l);

/// ||T||_{C^{l+r}} / (N^r ||T||_{C^l}) with N the box radius.
double bernstein_ratio(const TrigPoly& T, int l, int r, int oversample = 8);

/// Same ratio for F with no spectrum inside B_inf(N-1), normalized by N^r.
double reverse_bernstein_ratio(const TrigPoly& F, int l, int r, int N, int oversample = 8);

}  // namespace lipa
