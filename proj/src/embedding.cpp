#include "lipa/embedding.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "lipa/error.hpp"

namespace lipa {

namespace {

constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCauchyLevels = 10;

void check_query(const EmbeddingQuery& q) {
  if (!(q.p > 0.0 && q.p < 2.0)) fail(ErrorKind::parameter, "p must lie in (0,2)");
  if (q.d < 1) fail(ErrorKind::parameter, "dimension must be >= 1");
  if (q.r < 1) fail(ErrorKind::parameter, "r must be >= 1");
  if (q.l < 0) fail(ErrorKind::parameter, "l must be >= 0");
  if (const auto* pl = q.omega.as_power_log()) {
    // Only t -> 0 matters for the embedding, so power-log majorants need to be
    // r-quasiconcave near 0 only; (log 2/t)^{-3/2} fails the test near t = 1.
    const bool near_zero = (pl->a > 0.0 && pl->a < q.r) || (pl->a == 0.0 && pl->b <= 0.0) ||
                           (pl->a == q.r && pl->b >= 0.0);
    if (!(pl->scale > 0.0)) fail(ErrorKind::precondition, "majorant scale must be positive");
    if (!near_zero) fail(ErrorKind::precondition, "majorant is not r-quasiconcave near 0");
  } else if (*q.omega.table_size() >= 2) {
    const auto rep = validate_quasiconcave(q.omega, q.r, *q.omega.table_size());
    if (!rep.pass) {
      fail(ErrorKind::precondition,
           "majorant is not r-quasiconcave at n = " + std::to_string(rep.first_violation) + " (" + rep.condition + ")");
    }
  }
}

EmbedCase case_of(double theta, int l, int r) {
  if (theta < l - kTol) return EmbedCase::case_i;
  if (theta >= l + r - kTol) return EmbedCase::out_of_range;
  if (std::abs(theta - l) <= kTol) return EmbedCase::case_iii;
  return EmbedCase::case_ii;
}

// Symbolic convergence at t -> 0 of the case integral for omega = s t^a L^b.
bool power_log_converges(const PowerLog& m, EmbedCase c, double theta, int l, double p) {
  if (c == EmbedCase::case_ii) {
    const double gap = m.a - (theta - l);
    if (gap > kTol) return true;
    if (gap < -kTol) return false;
    return m.b * p < -1.0;
  }
  if (m.a > kTol) return true;
  return (m.b - 0.5) * p < -1.0;
}

class GaussLegendre {
 public:
  explicit GaussLegendre(int n) : table_(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n))) {
    if (!table_) fail(ErrorKind::parameter, "cannot build a Gauss-Legendre rule");
  }
  template <class F>
  double operator()(F&& g, double a, double b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < table_->n; ++i) {
      double x = 0.0, w = 0.0;
      gsl_integration_glfixed_point(a, b, i, &x, &w, table_.get());
      s += w * g(x);
    }
    return s;
  }

 private:
  struct Free {
    void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
  };
  std::unique_ptr<gsl_integration_glfixed_table, Free> table_;
};

// Case integral for power-log omega in u = log(1/t), over [0, u_max]
// (u_max = inf for the full integral): dyadic u-blocks, each split in four,
// then a geometric tail from the last two blocks.
double power_log_integral(const PowerLog& m, EmbedCase c, double theta, int l, double p, int points, double u_max) {
  const GaussLegendre gl(points);
  const double c_exp = c == EmbedCase::case_ii ? (theta - l) * p : 0.0;
  const double log_exp = c == EmbedCase::case_ii ? m.b * p : (m.b - 0.5) * p;
  const double lead = std::pow(m.scale, p);
  auto g = [&](double u) {
    return lead * std::exp((c_exp - m.a * p) * u + log_exp * std::log(std::numbers::ln2 + u));
  };
  double total = 0.0, prev = 0.0, last = 0.0;
  double lo = 0.0, hi = 1.0;
  for (int j = 0; j < 200; ++j) {
    const double top = std::min(hi, u_max);
    double block = 0.0;
    for (int q = 0; q < 4; ++q) block += gl(g, lo + (top - lo) * q / 4.0, lo + (top - lo) * (q + 1) / 4.0);
    total += block;
    prev = last;
    last = block;
    if (top >= u_max) return total;
    if (j >= 3 && block <= 1e-17 * total) return total;
    lo = hi;
    hi *= 2.0;
  }
  const double rho = prev > 0.0 ? last / prev : 0.0;
  if (rho < 1.0) total += last * rho / (1.0 - rho);
  return total;
}

// Exact integral of the case weight over the cell where omega takes the value
// omega_n, t in (1/(n+1/2), 1/(n-1/2)] (clipped to 1).
double cell_weight(std::int64_t n, EmbedCase c, double theta, int l, double p) {
  const double t_lo = 1.0 / (double(n) + 0.5);
  const double t_hi = n == 1 ? 1.0 : 1.0 / (double(n) - 0.5);
  if (c == EmbedCase::case_ii) {
    const double e = (theta - l) * p;
    return (std::pow(t_lo, -e) - std::pow(t_hi, -e)) / e;
  }
  const double e = 1.0 - p / 2.0;
  return (std::pow(std::log(2.0 / t_lo), e) - std::pow(std::log(2.0 / t_hi), e)) / e;
}

struct TabulatedIntegral {
  Finiteness state = Finiteness::undecided;
  double partial = 0.0;  // sum over the whole table (or up to nmax)
  double total = 0.0;    // partial plus extrapolated tail when finite
};

TabulatedIntegral tabulated_integral(const Majorant& omega, EmbedCase c, double theta, int l, double p,
                                     std::int64_t nmax) {
  const std::int64_t size = *omega.table_size();
  const std::int64_t top = nmax > 0 ? std::min(nmax, size) : size;
  TabulatedIntegral out;
  std::vector<double> octave;  // B_m over n in [2^m, 2^{m+1})
  for (std::int64_t n = 1; n <= size; ++n) {
    const double v = std::pow(omega.at(n), p) * cell_weight(n, c, theta, l, p);
    if (n <= top) out.partial += v;
    const auto m = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(n)) - 1);
    if (octave.size() <= m) octave.resize(m + 1, 0.0);
    octave[m] += v;
  }
  // Only octaves fully inside the table count.
  std::size_t complete = octave.size();
  if ((std::int64_t{1} << complete) - 1 > size) --complete;
  if (complete < kCauchyLevels + 1) return out;

  // Geometric decay keeps the rate -log(B_{m+1}/B_m) flat; polylog decay B_m ~ (m+1)^{-s} keeps
  // the Raabe number (m+1)(B_m/B_{m+1} - 1) flat at s (log(2/t) ~ (m+1) log 2
  // on octave m). Whichever statistic is flatter picks the model.
  const double last = octave[complete - 1];
  if (last == 0.0) {
    out.state = Finiteness::finite;
    out.total = out.partial;
    return out;
  }
  std::vector<double> rho, rate, raabe;
  for (std::size_t m = complete - kCauchyLevels - 1; m + 1 < complete; ++m) {
    const double a = octave[m], b = octave[m + 1];
    if (a == 0.0) return out;
    rho.push_back(b / a);
    rate.push_back(-std::log(b / a));
    raabe.push_back(double(m + 1) * (a / b - 1.0));
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double mean = 0.0;
    for (double x : v) mean += x / double(v.size());
    return mean != 0.0 ? (*hi - *lo) / std::abs(mean) : kInf;
  };
  const auto [rho_min, rho_max] = std::minmax_element(rho.begin(), rho.end());
  const auto [raabe_min, raabe_max] = std::minmax_element(raabe.begin(), raabe.end());
  if (*rho_min >= 1.0) {
    out.state = Finiteness::divergent;
  } else if (spread(rate) <= spread(raabe) && *rho_max <= 0.99) {
    out.state = Finiteness::finite;
    out.total = out.partial + last * *rho_max / (1.0 - *rho_max);
  } else if (*raabe_min > 1.2) {
    out.state = Finiteness::finite;
    out.total = out.partial + last * double(complete) / (*raabe_min - 1.0);
  } else if (*raabe_max < 0.8) {
    out.state = Finiteness::divergent;
  }
  return out;
}

Estimate integral_estimate(const EmbeddingQuery& q, EmbedCase c, double theta, int points, std::int64_t nmax) {
  Estimate e;
  if (const auto* pl = q.omega.as_power_log()) {
    const bool conv = power_log_converges(*pl, c, theta, q.l, q.p);
    e.state = conv ? Finiteness::finite : Finiteness::divergent;
    if (nmax > 0) {
      e.value = power_log_integral(*pl, c, theta, q.l, q.p, points, std::log(double(nmax)));
    } else {
      e.value = conv ? power_log_integral(*pl, c, theta, q.l, q.p, points, kInf) : kInf;
    }
    return e;
  }
  const auto t = tabulated_integral(q.omega, c, theta, q.l, q.p, nmax);
  e.state = t.state;
  e.value = nmax > 0 ? t.partial : (t.state == Finiteness::finite ? t.total
                                    : t.state == Finiteness::divergent ? kInf : t.partial);
  return e;
}

// Least r-quasiconcave majorant of omega_1..omega_nmax: running max of
// n^r omega_n, divided back by n^r. Equals omega once n^r omega_n increases;
// needed for power-log majorants that are r-quasiconcave only near t = 0.
Majorant regularized(const Majorant& omega, int r, std::int64_t nmax) {
  if (nmax < 2 || validate_quasiconcave(omega, r, nmax).pass) return omega;
  std::vector<double> v(static_cast<std::size_t>(nmax));
  double best = 0.0;
  for (std::int64_t n = 1; n <= nmax; ++n) {
    best = std::max(best, omega.scaled_at(n, r));
    v[static_cast<std::size_t>(n - 1)] = best * std::pow(double(n), -r);
  }
  return Majorant::tabulated(std::move(v));
}

double objective_weight(const EmbeddingQuery& q, std::int64_t n) {
  return std::pow(double(n), (q.d - 1) * (1.0 - q.p / 2.0) - q.p * q.l);
}

}  // namespace

const char* to_string(EmbedCase c) {
  switch (c) {
    case EmbedCase::case_i: return "(3)(i)";
    case EmbedCase::case_ii: return "(3)(ii)";
    case EmbedCase::case_iii: return "(3)(iii)";
    case EmbedCase::out_of_range: return "exponent-out-of-range";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::embeds: return "embeds";
    case Verdict::fails: return "fails";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

const char* to_string(Finiteness f) {
  switch (f) {
    case Finiteness::finite: return "finite";
    case Finiteness::divergent: return "divergent";
    case Finiteness::undecided: return "undecided";
    case Finiteness::not_applicable: return "not_applicable";
  }
  return "?";
}

double theta_of(int d, double p) { return d * (1.0 / p - 0.5); }

EmbeddingReport classify(const EmbeddingQuery& query, int quadrature_points) {
  check_query(query);
  if (quadrature_points < 1) fail(ErrorKind::parameter, "quadrature_points must be >= 1");
  EmbeddingReport rep;
  rep.query = query;
  rep.theta = theta_of(query.d, query.p);
  rep.kase = case_of(rep.theta, query.l, query.r);
  switch (rep.kase) {
    case EmbedCase::case_i: rep.verdict = Verdict::embeds; break;
    case EmbedCase::out_of_range: rep.verdict = Verdict::fails; break;
    default:
      rep.integral_value = integral_estimate(query, rep.kase, rep.theta, quadrature_points, 0);
      rep.verdict = rep.integral_value.state == Finiteness::finite    ? Verdict::embeds
                    : rep.integral_value.state == Finiteness::divergent ? Verdict::fails
                                                                        : Verdict::undecided;
  }
  return rep;
}

Estimate best_constant_integral(const EmbeddingQuery& query, int quadrature_points, std::int64_t nmax) {
  check_query(query);
  const double theta = theta_of(query.d, query.p);
  const EmbedCase c = case_of(theta, query.l, query.r);
  if (c == EmbedCase::case_i || c == EmbedCase::out_of_range) {
    fail(ErrorKind::not_applicable, std::string("no integral in case ") + to_string(c));
  }
  if (nmax < 0) fail(ErrorKind::parameter, "nmax must be >= 0");
  Estimate e = integral_estimate(query, c, theta, quadrature_points, nmax);
  e.value = std::pow(e.value, 1.0 / query.p);
  return e;
}

double best_constant_discretized(const EmbeddingQuery& query, const DiscretizingSequence& seq, std::int64_t nmax) {
  check_query(query);
  const EmbedCase c = case_of(theta_of(query.d, query.p), query.l, query.r);
  if (c == EmbedCase::case_i || c == EmbedCase::out_of_range) {
    fail(ErrorKind::not_applicable, std::string("no block formula in case ") + to_string(c));
  }
  if (nmax < 1) fail(ErrorKind::parameter, "nmax must be >= 1");
  const double p = query.p;
  const double e1 = 2.0 * p / (2.0 - p);
  const double e2 = query.d - 1 - query.l * e1;
  double sum = 0.0;
  for (std::size_t k = 0; k < seq.blocks(); ++k) {
    const std::int64_t lo = seq.block_begin(k);
    if (lo > nmax) break;
    const std::int64_t hi = std::min(seq.block_end(k), nmax);
    double inner = 0.0;
    for (std::int64_t n = lo; n <= hi; ++n) inner += std::pow(query.omega.at(n), e1) * std::pow(double(n), e2);
    sum += std::pow(inner, 1.0 - p / 2.0);
  }
  return std::pow(sum, 1.0 / p);
}

double best_constant_discretized(const EmbeddingQuery& query, std::int64_t nmax) {
  if (nmax < 1) fail(ErrorKind::parameter, "nmax must be >= 1");
  EmbeddingQuery q = query;
  q.omega = regularized(query.omega, query.r, nmax);
  return best_constant_discretized(q, discretize(q.omega, default_lambda(q.r), q.r, nmax), nmax);
}

double hardy_constraint(const Majorant& omega, int r, std::span<const double> x) {
  const auto n = static_cast<std::int64_t>(x.size());
  // c_N = omega_N^{-2} (sum_{m>=N} x_m^2 + N^{-2r} sum_{m<N} m^{2r} x_m^2)
  std::vector<double> tail(x.size() + 1, 0.0);
  for (std::int64_t m = n; m >= 1; --m) tail[m - 1] = tail[m] + x[m - 1] * x[m - 1];
  double head = 0.0, worst = 0.0;
  for (std::int64_t N = 1; N <= n; ++N) {
    const double w = omega.at(N);
    const double c = (tail[N - 1] + head * std::pow(double(N), -2.0 * r)) / (w * w);
    worst = std::max(worst, c);
    head += std::pow(double(N), 2.0 * r) * x[N - 1] * x[N - 1];
  }
  return worst;
}

namespace {

// `seed_x`, when non-empty, is one more warm-start candidate (zero-padded).
BruteForceResult bruteforce_impl(const EmbeddingQuery& original, std::int64_t nmax, std::int64_t iterations,
                                 std::uint64_t seed, std::span<const double> seed_x) {
  check_query(original);
  if (iterations < 0) fail(ErrorKind::parameter, "iterations must be >= 0");
  if (nmax < 1) fail(ErrorKind::parameter, "nmax must be >= 1");
  EmbeddingQuery query = original;
  query.omega = regularized(original.omega, original.r, nmax);
  const double p = query.p;
  const int r = query.r;
  const auto sz = static_cast<std::size_t>(nmax);
  std::vector<double> w(sz), inv_om2(sz), n2r(sz), ninv2r(sz);
  for (std::int64_t n = 1; n <= nmax; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    w[i] = objective_weight(query, n);
    const double om = query.omega.at(n);
    inv_om2[i] = 1.0 / (om * om);
    n2r[i] = std::pow(double(n), 2.0 * r);
    ninv2r[i] = 1.0 / n2r[i];
  }

  BruteForceResult out;
  auto objective_of = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < sz; ++i) s += w[i] * std::pow(x[i], p);
    return s;
  };
  std::vector<std::vector<double>> candidates;

  // Hoelder-equality candidate per block: maximize sum w x^p with sum x^2 fixed
  // (I-blocks), or with y = n^r x and sum y^2 fixed (J-blocks).
  {
    std::vector<double> x(sz, 0.0);
    const auto seq = discretize(query.omega, default_lambda(r), r, nmax);
    for (std::size_t k = 0; k < seq.blocks(); ++k) {
      const std::int64_t lo = seq.block_begin(k), hi = seq.block_end(k);
      const bool is_j = seq.labels[k] == BlockLabel::J;
      const double budget = is_j ? query.omega.scaled_at(hi, r) : query.omega.at(lo);
      double norm2 = 0.0;
      for (std::int64_t n = lo; n <= hi; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const double eff = is_j ? w[i] * std::pow(double(n), -r * p) : w[i];
        x[i] = std::pow(eff, 1.0 / (2.0 - p));
        norm2 += x[i] * x[i];
      }
      const double s = budget / std::sqrt(norm2);
      for (std::int64_t n = lo; n <= hi; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        x[i] *= is_j ? s * std::pow(double(n), -r) : s;
      }
    }
    candidates.push_back(std::move(x));
  }
  // Telescoping candidates: sum_{m>=N} x_m^2 = omega_N^2 for every N, or
  // sum_{m<=N} m^{2r} x_m^2 = N^{2r} omega_N^2 for every N.
  {
    std::vector<double> tail(sz), head(sz);
    double prev = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
      const double next = i + 1 < sz ? 1.0 / inv_om2[i + 1] : 0.0;
      tail[i] = std::sqrt(std::max(0.0, 1.0 / inv_om2[i] - next));
      const double s = std::pow(query.omega.scaled_at(std::int64_t(i + 1), r), 2);
      head[i] = std::sqrt(std::max(0.0, s - prev) * ninv2r[i]);
      prev = s;
    }
    candidates.push_back(std::move(tail));
    candidates.push_back(std::move(head));
  }
  if (!seed_x.empty()) {
    std::vector<double> x(sz, 0.0);
    std::copy_n(seed_x.begin(), std::min(sz, seed_x.size()), x.begin());
    candidates.push_back(std::move(x));
  }
  out.warm_objective = -1.0;
  for (auto& x : candidates) {
    const double c0 = hardy_constraint(query.omega, r, x);
    if (!(c0 > 0.0)) continue;
    for (auto& v : x) v /= std::sqrt(c0);
    const double obj = objective_of(x);
    if (obj > out.warm_objective) {
      out.warm_objective = obj;
      out.x = x;
    }
  }
  auto objective = [&] { return objective_of(out.x); };
  out.trace.push_back(out.warm_objective);

  // c[N-1] tracks the constraint at N. Pair moves: shrink x_i, then grow x_j by
  // the largest amount every constraint still allows; keep only improvements.
  std::vector<double> c(sz, 0.0);
  {
    std::vector<double> tail(sz + 1, 0.0);
    for (std::size_t m = sz; m >= 1; --m) tail[m - 1] = tail[m] + out.x[m - 1] * out.x[m - 1];
    double head = 0.0;
    for (std::size_t N = 1; N <= sz; ++N) {
      c[N - 1] = (tail[N - 1] + head * ninv2r[N - 1]) * inv_om2[N - 1];
      head += n2r[N - 1] * out.x[N - 1] * out.x[N - 1];
    }
  }
  auto shift = [&](std::size_t i, double delta) {
    // x_i^2 += delta; coefficient min(1, (i+1)/N)^{2r}
    for (std::size_t N = 0; N < sz; ++N) {
      const double m = N <= i ? 1.0 : n2r[i] * ninv2r[N];
      c[N] += delta * m * inv_om2[N];
    }
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, sz - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double obj = out.warm_objective;
  out.worst_step_constraint = *std::max_element(c.begin(), c.end());
  for (std::int64_t it = 0; it < iterations && sz > 1; ++it) {
    const std::size_t i = pick(rng);
    if (out.x[i] == 0.0) continue;
    std::size_t j;
    if (unit(rng) < 0.5) {
      j = pick(rng);
    } else {
      const double span = std::max(1.0, 0.25 * double(i + 1));
      const auto off = static_cast<std::int64_t>(std::ceil(span * unit(rng)));
      const std::int64_t cand = unit(rng) < 0.5 ? std::int64_t(i) - off : std::int64_t(i) + off;
      j = static_cast<std::size_t>(std::clamp<std::int64_t>(cand, 0, std::int64_t(sz) - 1));
    }
    if (j == i) continue;
    // a third of the moves are coarse, the rest log-uniform in [1e-8, 1]
    const double cut = unit(rng) < 1.0 / 3.0 ? unit(rng) : std::pow(10.0, -8.0 * unit(rng));
    const double xi_new = out.x[i] * (1.0 - cut);
    const double di = xi_new * xi_new - out.x[i] * out.x[i];
    shift(i, di);
    double room = kInf;
    for (std::size_t N = 0; N < sz; ++N) {
      const double m = (N <= j ? 1.0 : n2r[j] * ninv2r[N]) * inv_om2[N];
      room = std::min(room, std::max(0.0, 1.0 - c[N]) / m);
    }
    const double xj_new = std::sqrt(out.x[j] * out.x[j] + room);
    const double gain = w[i] * (std::pow(xi_new, p) - std::pow(out.x[i], p)) +
                        w[j] * (std::pow(xj_new, p) - std::pow(out.x[j], p));
    if (gain > 1e-15 * obj) {
      shift(j, xj_new * xj_new - out.x[j] * out.x[j]);
      out.x[i] = xi_new;
      out.x[j] = xj_new;
      obj += gain;
      ++out.accepted;
      out.trace.push_back(obj);
      out.worst_step_constraint = std::max(out.worst_step_constraint, *std::max_element(c.begin(), c.end()));
    } else {
      shift(i, -di);
    }
  }

  out.constraint = hardy_constraint(query.omega, r, out.x);
  if (out.constraint > 1.0) {
    for (auto& v : out.x) v /= std::sqrt(out.constraint);
    out.constraint = hardy_constraint(query.omega, r, out.x);
  }
  out.objective = objective();
  out.k = std::pow(out.objective, 1.0 / p);
  return out;
}

}  // namespace

BruteForceResult best_constant_bruteforce(const EmbeddingQuery& query, std::int64_t nmax, std::int64_t iterations,
                                          std::uint64_t seed) {
  return bruteforce_impl(query, nmax, iterations, seed, {});
}

EmbeddingReport embedding_report(const EmbeddingQuery& query, const ConstantsOptions& opt) {
  EmbeddingReport rep = classify(query, opt.quadrature_points);
  rep.nmax = opt.nmax;
  const Finiteness inherited = rep.verdict == Verdict::embeds  ? Finiteness::finite
                               : rep.verdict == Verdict::fails ? Finiteness::divergent
                                                               : Finiteness::undecided;
  rep.k_bruteforce = {inherited, best_constant_bruteforce(query, opt.nmax, opt.iterations, opt.seed).k};
  if (rep.kase == EmbedCase::case_ii || rep.kase == EmbedCase::case_iii) {
    rep.k_discretized = {inherited, best_constant_discretized(query, opt.nmax)};
    rep.k_integral = best_constant_integral(query, opt.quadrature_points, 0);
    if (rep.k_integral.state != Finiteness::finite) {
      rep.k_integral.value = best_constant_integral(query, opt.quadrature_points, opt.nmax).value;
    }
    if (rep.verdict == Verdict::embeds) {
      const double vals[] = {rep.k_bruteforce.value, rep.k_discretized.value, rep.k_integral.value};
      const auto [lo, hi] = std::minmax_element(std::begin(vals), std::end(vals));
      rep.agreement_bracket = *hi / *lo;
    }
  }
  return rep;
}

Lemma22Result lemma22_equivalence(std::span<const double> alpha, std::span<const double> f, double p, double q,
                                  double r, double lambda) {
  if (!(q > 0.0 && q <= 1.0)) fail(ErrorKind::parameter, "q must lie in (0,1]");
  if (!(p > 0.0 && r > 0.0)) fail(ErrorKind::parameter, "p and r must be positive");
  if (alpha.empty() || f.empty()) fail(ErrorKind::parameter, "alpha and f must be nonempty");
  for (double a : alpha) {
    if (!(a >= 0.0)) fail(ErrorKind::parameter, "alpha must be nonnegative");
  }
  for (double v : f) {
    if (!(v >= 0.0)) fail(ErrorKind::parameter, "f must be nonnegative");
  }
  const double pr = p * r;
  const double s = pr / q;
  Lemma22Result out;
  std::vector<double> js(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) js[j] = std::pow(double(j + 1), s);
  for (std::size_t n = 0; n < alpha.size(); ++n) {
    if (alpha[n] == 0.0) continue;
    const double ns = std::pow(double(n + 1), s);
    double inner = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) inner += f[j] / (js[j] + ns);
    out.lhs += alpha[n] * std::pow(inner, q);
  }

  std::vector<double> bar(f.size());
  std::vector<double> npr(alpha.size());
  for (std::size_t n = 0; n < alpha.size(); ++n) npr[n] = std::pow(double(n + 1), pr);
  for (std::size_t l = 0; l < f.size(); ++l) {
    const double lpr = std::pow(double(l + 1), pr);
    double v = 0.0;
    for (std::size_t n = 0; n < alpha.size(); ++n) v += alpha[n] / (npr[n] + lpr);
    bar[l] = v;
  }
  if (!(bar[0] > 0.0)) fail(ErrorKind::degenerate, "alpha vanishes identically");
  const auto L = static_cast<std::int64_t>(f.size());
  const Majorant bar_p = Majorant::tabulated(bar);
  out.seq = discretize(bar_p, lambda, pr, L);
  for (std::size_t k = 0; k < out.seq.blocks(); ++k) {
    double inner = 0.0;
    for (std::int64_t l = out.seq.block_begin(k); l <= out.seq.block_end(k); ++l) {
      const auto i = static_cast<std::size_t>(l - 1);
      inner += std::pow(bar[i], 1.0 / q) * f[i];  // (bar-omega^p)^{1/q} = bar-omega^{p/q}
    }
    out.rhs += std::pow(inner, q);
  }
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : (out.lhs > 0.0 ? kInf : 1.0);
  return out;
}

std::int64_t shell_count(int d, std::int64_t n) {
  if (d < 1) fail(ErrorKind::parameter, "dimension must be >= 1");
  return shell_size(d, static_cast<int>(n));
}

double shell_extremal_ratio(int d, std::int64_t n, double p) {
  return std::pow(double(shell_count(d, n)), 1.0 - p / 2.0);
}

double besov_seminorm(const TrigPoly& f, double theta, NormKind q, double p, std::vector<double> t_grid) {
  if (!(theta > 0.0)) fail(ErrorKind::parameter, "theta must be positive");
  if (!(p > 0.0)) fail(ErrorKind::parameter, "p must be positive");
  if (f.is_zero()) return 0.0;
  const int r = static_cast<int>(std::ceil(theta)) + 1;
  if (t_grid.empty()) {
    const double lo = 1.0 / (16.0 * std::max(f.radius(), 1));
    for (double t = 1.0; t >= lo; t *= std::exp2(-1.0 / 8)) t_grid.push_back(t);
  }
  std::sort(t_grid.begin(), t_grid.end());
  ModulusQuery mq;
  mq.r = r;
  mq.q = q;
  mq.t_grid = t_grid;
  const auto pts = modulus(f, mq);
  std::vector<double> g(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) g[i] = std::pow(std::pow(pts[i].t, -theta) * pts[i].value, p);
  double s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) s += 0.5 * (g[i] + g[i - 1]) * std::log(pts[i].t / pts[i - 1].t);
  // Below the grid omega_r(f,t) ~ t^r; above it the modulus is taken as constant.
  s += g.front() / ((r - theta) * p);
  const double t_top = pts.back().t;
  if (t_top < 1.0) s += std::pow(pts.back().value, p) * (std::pow(t_top, -theta * p) - 1.0) / (theta * p);
  return std::pow(s, 1.0 / p);
}

double ap_norm(const TrigPoly& f, double p) {
  if (!(p > 0.0)) fail(ErrorKind::parameter, "p must be positive");
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

SharpnessWitness sharpness_witness(const EmbeddingQuery& query, std::int64_t nmax, std::uint64_t seed,
                                   const WitnessOptions& opt) {
  const auto rep = classify(query);
  if (rep.verdict != Verdict::fails) fail(ErrorKind::not_applicable, "sharpness witness needs a failing query");
  if (opt.n_start < 2 || nmax < opt.n_start) fail(ErrorKind::parameter, "need 2 <= n_start <= nmax");
  SharpnessWitness out;
  ModulusQuery mq;
  mq.r = query.r;
  mq.l = query.l;
  mq.direction_count = opt.direction_count;
  std::vector<double> prev;
  for (std::int64_t N = opt.n_start; N <= nmax; N *= 2) {
    auto bf = bruteforce_impl(query, N, opt.iterations, seed, prev);
    std::vector<double> R(static_cast<std::size_t>(N) + 1, 0.0);
    for (std::int64_t n = 1; n <= N; ++n) {
      R[static_cast<std::size_t>(n)] = bf.x[static_cast<std::size_t>(n - 1)] * std::pow(double(n), -query.l);
    }
    out.f = spread_over_shells(query.d, R, seed);
    mq.t_grid = default_t_grid(static_cast<int>(N));
    out.rows.push_back({N, ap_norm(out.f, query.p), lip_functional_i(out.f, query.omega, mq)});
    prev = std::move(bf.x);
  }
  return out;
}

}  // namespace lipa
