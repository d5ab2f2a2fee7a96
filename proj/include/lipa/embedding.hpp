#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lipa/majorant.hpp"
#include "lipa/smoothness.hpp"
#include "lipa/trigpoly.hpp"

namespace lipa {

/// Lip^{r,l}_inf(omega; T^d) against A_p, 0 < p < 2.
struct EmbeddingQuery {
  int d = 1;
  int r = 1;
  int l = 0;
  double p = 1.0;
  Majorant omega = Majorant::power_log(0.5, 0.0);
  bool continuous = false;  // label only: the R^d criterion is the same test
};

enum class EmbedCase { case_i, case_ii, case_iii, out_of_range };
enum class Verdict { embeds, fails, undecided };
enum class Finiteness { finite, divergent, undecided, not_applicable };

const char* to_string(EmbedCase c);
const char* to_string(Verdict v);
const char* to_string(Finiteness f);

/// A constant or integral with its convergence state. For divergent or
/// undecided states `value` holds the partial value when one was computed.
struct Estimate {
  Finiteness state = Finiteness::not_applicable;
  double value = std::numeric_limits<double>::quiet_NaN();
};

struct EmbeddingReport {
  EmbeddingQuery query;
  double theta = 0.0;  // d (1/p - 1/2)
  EmbedCase kase = EmbedCase::case_i;
  Verdict verdict = Verdict::embeds;
  Estimate integral_value;  // the case's integral, i.e. K^p
  Estimate k_bruteforce;
  Estimate k_discretized;
  Estimate k_integral;
  double agreement_bracket = std::numeric_limits<double>::quiet_NaN();  // max/min of finite K's
  std::int64_t nmax = 0;  // truncation used for the constants, 0 if none were computed
};

double theta_of(int d, double p);

/// Verdict part: case, verdict and (cases ii/iii) the integral. Power-log
/// majorants are decided by exponent comparison; tabulated ones by a dyadic
/// ratio/Raabe test on the last ten complete octaves of the table.
EmbeddingReport classify(const EmbeddingQuery& query, int quadrature_points = 32);

/// K = (integral)^{1/p} for cases ii and iii. With nmax > 0 the integral is
/// truncated to [1/nmax, 1] and always finite; the state still reports the
/// convergence of the full integral.
Estimate best_constant_integral(const EmbeddingQuery& query, int quadrature_points = 32, std::int64_t nmax = 0);

/// K^p = sum_k (sum_{n in block k, n <= nmax} omega_n^{2p/(2-p)} n^{d-1-2pl/(2-p)})^{1-p/2}.
double best_constant_discretized(const EmbeddingQuery& query, const DiscretizingSequence& seq, std::int64_t nmax);
/// Same, with the sequence discretize(omega, default_lambda(r), r, nmax). Here
/// and in the brute force, a majorant that is r-quasiconcave only near 0 is
/// replaced on 1..nmax by its least r-quasiconcave majorant.
double best_constant_discretized(const EmbeddingQuery& query, std::int64_t nmax);

struct BruteForceResult {
  double k = 0.0;          // objective^{1/p}
  double objective = 0.0;  // sum x_n^p n^{(d-1)(1-p/2) - pl}
  double warm_objective = 0.0;
  double constraint = 0.0;         // sup_N omega_N^{-2} sum (x_n min(1,n/N)^r)^2 at x
  double worst_step_constraint = 0.0;  // largest constraint value seen after any accepted move
  std::int64_t accepted = 0;
  std::vector<double> x;      // x[n-1] = x_n
  std::vector<double> trace;  // objective after the warm start and after each accepted move
};

BruteForceResult best_constant_bruteforce(const EmbeddingQuery& query, std::int64_t nmax, std::int64_t iterations,
                                          std::uint64_t seed);

/// The constraint functional of the brute-force problem at x.
double hardy_constraint(const Majorant& omega, int r, std::span<const double> x);

struct ConstantsOptions {
  std::int64_t nmax = 1024;
  std::int64_t iterations = 20000;
  std::uint64_t seed = 0;
  int quadrature_points = 32;
};

/// classify plus all three constants at opt.nmax. Partial constants inherit the
/// verdict's state; agreement_bracket is set when all three are finite.
EmbeddingReport embedding_report(const EmbeddingQuery& query, const ConstantsOptions& opt = {});

struct Lemma22Result {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs
  DiscretizingSequence seq;
};

/// alpha[n-1] = alpha_n, f[j-1] = f_j. The sequence discretizes
/// bar-omega^p_l = sum_n alpha_n / (n^{pr} + l^{pr}), l = 1..f.size(), at order pr.
Lemma22Result lemma22_equivalence(std::span<const double> alpha, std::span<const double> f, double p, double q,
                                  double r, double lambda);

std::int64_t shell_count(int d, std::int64_t n);
double shell_extremal_ratio(int d, std::int64_t n, double p);

/// (int_0^1 (t^{-theta} omega_{ceil(theta)+1}(f,t)_q)^p dt/t)^{1/p}, trapezoid in
/// log t on the grid with power-law end corrections. An empty grid means 8
/// points per octave from 1 down to 1/(16N).
double besov_seminorm(const TrigPoly& f, double theta, NormKind q, double p, std::vector<double> t_grid = {});

double ap_norm(const TrigPoly& f, double p);

struct GrowthRow {
  std::int64_t nmax = 0;
  double ap_norm = 0.0;
  double lip_functional = 0.0;
};

struct WitnessOptions {
  std::int64_t n_start = 32;
  std::int64_t iterations = 5000;
  int direction_count = 8;
};

struct SharpnessWitness {
  TrigPoly f;  // the witness at the largest nmax
  std::vector<GrowthRow> rows;
};

/// Brute-force witnesses at n_start, 2 n_start, ..., nmax, each warm-started from
/// the previous one, spread over shells (R_n = x_n n^{-l}, equal moduli, random
/// signs). Throws not_applicable unless the query fails.
SharpnessWitness sharpness_witness(const EmbeddingQuery& query, std::int64_t nmax, std::uint64_t seed,
                                   const WitnessOptions& opt = {});

}  // namespace lipa
