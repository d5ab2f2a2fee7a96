#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lipa/majorant.hpp"
#include "lipa/trigpoly.hpp"

namespace lipa {

struct FlattenResult {
  TrigPoly poly;
  double achieved = 0.0;  // ||h||_{C^s}
  double budget = 0.0;    // (sum (c_k |k|^s)^2)^{1/2}, |k| Euclidean
  double ratio = 0.0;     // achieved / budget, 0 for empty support
};

/// Best of `trials` seeded random sign patterns h_k = eps_k c_k, scored by the
/// C^s norm. The amplitudes are the moduli of the coefficients of `c`.
FlattenResult kkdl_flatten(const TrigPoly& c, int s, int trials, std::uint64_t seed, int oversample = 8);

/// Copy of `a` restricted to lo <= ||k||_inf <= hi.
TrigPoly restrict_to_window(const TrigPoly& a, int lo, int hi);

struct BlockPolynomial {
  TrigPoly poly;
  int k = 0;  // 1-based block index
  BlockLabel mode = BlockLabel::I;
  int mu_lo = 0;  // mu_k
  int mu_hi = 0;  // mu_{k+1} - 1 (nmax for the last block)
  double achieved_cl = 0.0;
  double achieved_clr = 0.0;
  double flatten_ratio = 0.0;
  double budget = 0.0;  // omega_{mu_k} (I) or mu_hi^r omega_{mu_hi} (J)
};

struct KkdlOptions {
  int trials = 32;
  int oversample = 4;
  int direction_count = 8;
  int t_per_octave = 4;
};

/// S_k = V_{mu_hi}(h - V_{floor(mu_lo/2)}(h)) with h the flattened block. For
/// mu_lo = 1 the inner operator is the projection onto the constant term.
/// Throws precondition if `a` has support outside mu_lo <= ||n||_inf <= mu_hi.
BlockPolynomial build_block(const TrigPoly& a, const DiscretizingSequence& seq, std::size_t k,
                            const Majorant& omega, int l, int r, std::uint64_t seed,
                            const KkdlOptions& opt = {});

struct DominationCheck {
  bool ok = true;
  double margin = 0.0;  // min over supp(g) of |f(n)| - |g(n)|; 0 for empty support
};

/// Throws box_mismatch unless f and g share d and f's box contains g's.
DominationCheck verify_domination(const TrigPoly& f, const TrigPoly& g);

/// Least r-quasiconcave majorant of the points (t_j, m_j), tabulated at t = 1/n
/// for n = 1..n_max: omega(t) = max_j m_j min(1, (t/t_j)^r).
Majorant quasiconcave_envelope(const std::vector<std::pair<double, double>>& samples, int r, std::int64_t n_max);

struct ConstructionReport {
  TrigPoly f;
  Majorant omega = Majorant::power_log(0, 0);
  DiscretizingSequence seq;
  bool domination_ok = false;
  double domination_margin = 0.0;
  bool windows_ok = false;     // every block inside B(2 mu_hi) \ B(mu_lo/2), real coefficients
  bool disjoint_ok = false;    // spec(S_k) and spec(S_{k+2}) disjoint
  std::vector<std::pair<double, double>> modulus_ratios;  // (t, omega_r(D^l f,t)_inf / omega(t))
  std::vector<std::pair<double, double>> lower_ratios;    // (t, omega_r(D^l f,t)_2 / omega(t))
  std::vector<BlockPolynomial> per_block;
  std::vector<double> flatten_constants;
  double constant_term = 0.0;
  std::uint64_t seed = 0;
  int r = 1;
  int l = 0;
};

ConstructionReport construct_dominating(const TrigPoly& g, int r, int l, std::uint64_t seed,
                                        const KkdlOptions& opt = {});

}  // namespace lipa
