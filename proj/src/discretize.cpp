#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lipa/error.hpp"
#include "lipa/majorant.hpp"

namespace lipa {

namespace {

// omega_n and n^r omega_n for n = 1..nmax, index 0 unused.
struct SampledMajorant {
  std::vector<double> value;
  std::vector<double> scaled;

  SampledMajorant(const Majorant& omega, double r, std::int64_t nmax)
      : value(static_cast<std::size_t>(nmax + 1)), scaled(static_cast<std::size_t>(nmax + 1)) {
    for (std::int64_t n = 1; n <= nmax; ++n) {
      value[static_cast<std::size_t>(n)] = omega.at(n);
      scaled[static_cast<std::size_t>(n)] = omega.scaled_at(n, r);
    }
  }
  double w(std::int64_t n) const { return value[static_cast<std::size_t>(n)]; }
  double sw(std::int64_t n) const { return scaled[static_cast<std::size_t>(n)]; }
};

void check_nmax_against_table(const Majorant& omega, std::int64_t nmax) {
  if (nmax < 1) fail(ErrorKind::parameter, "nmax must be >= 1");
  if (auto size = omega.table_size(); size && nmax > *size) {
    fail(ErrorKind::parameter, "nmax " + std::to_string(nmax) + " exceeds the table length " +
                                   std::to_string(*size));
  }
}

}  // namespace

DiscretizingSequence discretize(const Majorant& omega, double lambda, double r, std::int64_t nmax) {
  if (!(lambda > 4.0)) fail(ErrorKind::parameter, "discretization needs lambda > 4");
  if (!(r > 0.0)) fail(ErrorKind::parameter, "order r must be positive");
  check_nmax_against_table(omega, nmax);
  if (nmax >= 2) {
    if (auto check = validate_quasiconcave(omega, r, nmax); !check.pass) {
      fail(ErrorKind::precondition, "majorant is not " + std::to_string(r) +
                                        "-quasiconcave: " + check.condition + " (n = " +
                                        std::to_string(check.first_violation) + ")");
    }
  }

  const SampledMajorant s(omega, r, nmax);
  DiscretizingSequence seq;
  seq.lambda = lambda;
  seq.r = r;
  seq.nmax = nmax;
  seq.mu.push_back(1);

  for (;;) {
    const std::int64_t cur = seq.mu.back();
    const double scaled_bound = lambda * s.sw(cur);
    const double value_bound = s.w(cur);
    std::int64_t next = 0;
    for (std::int64_t n = cur + 1; n <= nmax; ++n) {
      if (s.sw(n) > scaled_bound && lambda * s.w(n) < value_bound) {
        next = n;
        break;
      }
    }
    if (next == 0) break;
    seq.mu.push_back(next);
  }

  seq.labels.reserve(seq.mu.size());
  for (std::size_t k = 0; k < seq.mu.size(); ++k) {
    const std::int64_t m = seq.block_end(k);
    const bool j_bracket = s.sw(m) <= lambda * s.sw(seq.mu[k]);
    seq.labels.push_back(j_bracket ? BlockLabel::J : BlockLabel::I);
  }
  return seq;
}

DiscretizationReport verify_discretizing_properties(const DiscretizingSequence& seq,
                                                    const Majorant& omega) {
  DiscretizationReport rep;
  auto violate = [&rep](bool& flag, const std::string& what) {
    flag = false;
    rep.violations.push_back(what);
  };

  if (seq.mu.empty()) {
    violate(rep.starts_at_one, "empty sequence");
    return rep;
  }
  check_nmax_against_table(omega, seq.nmax);
  const double lambda = seq.lambda;
  const double r = seq.r;
  if (seq.labels.size() != seq.mu.size()) {
    violate(rep.brackets, "label count differs from block count");
  }
  if (seq.mu.front() != 1) violate(rep.starts_at_one, "mu_1 != 1");
  for (std::size_t k = 0; k < seq.mu.size(); ++k) {
    if (seq.mu[k] < 1 || seq.mu[k] > seq.nmax ||
        (k > 0 && seq.mu[k] <= seq.mu[k - 1])) {
      violate(rep.growth, "mu is not strictly increasing within [1, nmax] at k = " +
                              std::to_string(k + 1));
      return rep;
    }
  }

  const SampledMajorant s(omega, r, seq.nmax);
  for (std::size_t k = 0; k + 1 < seq.mu.size(); ++k) {
    const std::int64_t a = seq.mu[k];
    const std::int64_t b = seq.mu[k + 1];
    const std::string at = " at k = " + std::to_string(k + 1);
    if (std::pow(static_cast<double>(b), r) < lambda * std::pow(static_cast<double>(a), r)) {
      violate(rep.growth, "mu_{k+1}^r < lambda mu_k^r" + at);
    }
    if (lambda * s.w(b) > s.w(a)) violate(rep.omega_decay, "lambda omega_{mu_{k+1}} > omega_{mu_k}" + at);
    if (lambda * s.sw(a) > s.sw(b)) {
      violate(rep.scaled_growth, "lambda mu_k^r omega_{mu_k} > mu_{k+1}^r omega_{mu_{k+1}}" + at);
    }
  }

  for (std::size_t k = 0; k < seq.mu.size() && k < seq.labels.size(); ++k) {
    const std::int64_t a = seq.mu[k];
    const std::int64_t m = seq.block_end(k);
    const std::string at = " at k = " + std::to_string(k + 1);
    if (seq.labels[k] == BlockLabel::I) {
      rep.worst_i_ratio = std::max(rep.worst_i_ratio, s.w(a) / s.w(m));
      if (!(s.w(m) <= s.w(a) && s.w(a) <= lambda * s.w(m))) {
        violate(rep.brackets, "I-bracket outside [1, lambda]" + at);
      }
    } else {
      rep.worst_j_ratio = std::max(rep.worst_j_ratio, s.sw(m) / s.sw(a));
      if (!(s.sw(a) <= s.sw(m) && s.sw(m) <= lambda * s.sw(a))) {
        violate(rep.brackets, "J-bracket outside [1, lambda]" + at);
      }
    }
  }

  if (omega.as_tabulated() != nullptr && seq.nmax >= 2) {
    std::int64_t start = seq.nmax;
    while (start > 1 && s.w(start - 1) == s.w(seq.nmax)) --start;
    if (start < seq.nmax) {
      rep.notes.push_back("trailing plateau: omega constant on [" + std::to_string(start) + ", " +
                          std::to_string(seq.nmax) + "]; sequence terminated there");
    }
  }
  if (lambda * s.w(seq.nmax) >= s.w(seq.mu.back())) {
    rep.notes.push_back("omega did not decay by lambda after the last mu within nmax");
  }
  return rep;
}

double WeightRepresentation::power_value(std::int64_t N) const {
  const double npr = std::pow(static_cast<double>(N), p * r);
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    sum += alpha[i] / (npr + std::pow(static_cast<double>(i + 1), p * r));
  }
  return sum;
}

double WeightRepresentation::value(std::int64_t N) const { return std::pow(power_value(N), 1.0 / p); }

WeightRepresentation represent_weights(const Majorant& omega, double p, double r, std::int64_t M) {
  if (M < 2) fail(ErrorKind::parameter, "represent_weights needs M >= 2");
  if (!(p > 0.0 && p < 2.0)) fail(ErrorKind::parameter, "p must lie in (0,2)");
  if (!(r > 0.0)) fail(ErrorKind::parameter, "order r must be positive");
  check_nmax_against_table(omega, M);
  if (auto check = validate_quasiconcave(omega, r, M); !check.pass) {
    fail(ErrorKind::precondition, "majorant is not quasiconcave: " + check.condition);
  }

  // Graph of f(t) = omega^p(t^{1/(pr)}) at t_N = N^{-pr}, listed by increasing t,
  // with the origin prepended; its upper hull is the least concave majorant.
  struct Point {
    double t;
    double f;
    std::int64_t n;
  };
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(M + 1));
  pts.push_back({0.0, 0.0, 0});
  for (std::int64_t n = M; n >= 1; --n) {
    pts.push_back({std::pow(static_cast<double>(n), -p * r), std::pow(omega.at(n), p), n});
  }

  std::vector<Point> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const double cross = (a.t - o.t) * (q.f - o.f) - (a.f - o.f) * (q.t - o.t);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }

  // g(t) = sum_j beta_j min(t, t_j); beta_j is the slope drop at vertex j and
  // g is flat beyond t = 1.
  WeightRepresentation rep;
  rep.p = p;
  rep.r = r;
  rep.alpha.assign(static_cast<std::size_t>(M), 0.0);
  for (std::size_t j = 1; j < hull.size(); ++j) {
    const double before = (hull[j].f - hull[j - 1].f) / (hull[j].t - hull[j - 1].t);
    const double after = j + 1 < hull.size()
                             ? (hull[j + 1].f - hull[j].f) / (hull[j + 1].t - hull[j].t)
                             : 0.0;
    rep.alpha[static_cast<std::size_t>(hull[j].n - 1)] = std::max(0.0, before - after);
  }

  rep.lower = std::numeric_limits<double>::infinity();
  rep.upper = 0.0;
  for (std::int64_t n = 1; n <= M; ++n) {
    const double ratio = rep.value(n) / omega.at(n);
    rep.lower = std::min(rep.lower, ratio);
    rep.upper = std::max(rep.upper, ratio);
  }
  return rep;
}

}  // namespace lipa
