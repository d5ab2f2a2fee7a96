#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lipa {

/// omega(t) = scale * t^a * (log(2/t))^b on (0,1].
struct PowerLog {
  double a = 0.0;
  double b = 0.0;
  double scale = 1.0;
};

/// values[n-1] holds omega(1/n) for n = 1..values.size().
struct Tabulated {
  std::vector<double> values;
};

/// A candidate r-quasiconcave majorant, either symbolic or tabulated on t = 1/n.
///
/// The integer-indexed accessors `at(n)` and `scaled_at(n, r)` are what the
/// discretization uses; they evaluate n^r * omega_n directly (for power-log as
/// n^(r-a) * log(2n)^b) so that identities such as n^r * n^-r == 1 hold exactly.
class Majorant {
 public:
  static Majorant power_log(double a, double b, double scale = 1.0);
  static Majorant tabulated(std::vector<double> values);

  /// omega(t); throws ErrorKind::domain outside (0,1] or past the table end.
  double operator()(double t) const;

  /// omega_n = omega(1/n), n >= 1.
  double at(std::int64_t n) const;

  /// n^r * omega_n.
  double scaled_at(std::int64_t n, double r) const;

  /// Table length for tabulated majorants, nullopt for symbolic ones.
  std::optional<std::int64_t> table_size() const;

  const PowerLog* as_power_log() const { return std::get_if<PowerLog>(&kind_); }
  const Tabulated* as_tabulated() const { return std::get_if<Tabulated>(&kind_); }

  /// c * omega for c > 0.
  Majorant scaled(double c) const;

  /// Tabulated copy of omega_1..omega_n.
  Majorant tabulate(std::int64_t n) const;

  std::string describe() const;

 private:
  explicit Majorant(std::variant<PowerLog, Tabulated> kind) : kind_(std::move(kind)) {}
  void check_index(std::int64_t n) const;

  std::variant<PowerLog, Tabulated> kind_;
};

struct QuasiconcavityReport {
  bool pass = true;
  std::int64_t first_violation = 0;  // n at which the check failed (0 if pass)
  std::string condition;             // which monotonicity failed
};

/// Checks omega_n non-increasing and n^r omega_n non-decreasing for n = 1..nmax.
/// Comparisons allow a relative slack of 1e-12 so that exactly flat stretches
/// (e.g. omega_n = n^-r) are not rejected because of rounding.
QuasiconcavityReport validate_quasiconcave(const Majorant& omega, double r, std::int64_t nmax);

/// Exact symbolic test of r-quasiconcavity on (0,1] for power-log majorants.
bool power_log_is_quasiconcave(const PowerLog& m, double r);

enum class BlockLabel { I, J };

const char* to_string(BlockLabel label);

/// Discretizing sequence mu_1 < ... < mu_L (stored 0-based), with mu_{L+1} an
/// implicit infinity. The last block is truncated at `nmax`.
struct DiscretizingSequence {
  std::vector<std::int64_t> mu;
  std::vector<BlockLabel> labels;
  double lambda = 0.0;
  double r = 0.0;
  std::int64_t nmax = 0;

  std::size_t blocks() const { return mu.size(); }
  std::int64_t block_begin(std::size_t k) const { return mu[k]; }
  /// Last index of block k: mu_{k+1} - 1, or nmax for the final block.
  std::int64_t block_end(std::size_t k) const {
    return k + 1 < mu.size() ? mu[k + 1] - 1 : nmax;
  }
  /// Block containing frequency n (n >= 1), or blocks() if n > nmax.
  std::size_t block_of(std::int64_t n) const;
};

/// max(5, 4^r + 1): the smallest convenient lambda with lambda^(1/r) > 4.
double default_lambda(double r);

/// Greedy construction mu_{k+1} = min{n : n^r w_n > lambda mu_k^r w_{mu_k}
/// and lambda w_n < w_{mu_k}}, scanning n <= nmax with exact comparisons.
DiscretizingSequence discretize(const Majorant& omega, double lambda, double r, std::int64_t nmax);

struct DiscretizationReport {
  bool starts_at_one = true;   // item (1)
  bool growth = true;          // item (3)
  bool omega_decay = true;     // item (4)
  bool scaled_growth = true;   // item (5)
  bool brackets = true;        // item (6)
  double worst_i_ratio = 1.0;  // max omega_{mu_k} / omega_{mu_{k+1}-1} over I-blocks
  double worst_j_ratio = 1.0;  // max of the J-bracket ratio over J-blocks
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  bool ok() const { return starts_at_one && growth && omega_decay && scaled_growth && brackets; }
};

DiscretizationReport verify_discretizing_properties(const DiscretizingSequence& seq,
                                                    const Majorant& omega);

/// Nonnegative weights with bar-omega^p(1/N) = sum_n alpha_n / (N^{pr} + n^{pr}).
struct WeightRepresentation {
  std::vector<double> alpha;  // alpha[n-1] = alpha_n
  double p = 1.0;
  double r = 1.0;
  double lower = 0.0;  // min over N of bar-omega(1/N) / omega(1/N)
  double upper = 0.0;  // max of the same ratio

  double power_value(std::int64_t N) const;
  double value(std::int64_t N) const;
};

WeightRepresentation represent_weights(const Majorant& omega, double p, double r, std::int64_t M);

}  // namespace lipa
