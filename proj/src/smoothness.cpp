#include "lipa/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lipa/error.hpp"

namespace lipa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Sample {
  double value = -1.0;
  std::array<double, 3> h{};
  Freq alpha{};
};

// Below |h| = 1/(2 sqrt(d) N) every term |1 - e^{2 pi i <k,h>}| grows with |h|
// along a fixed direction, so radii under 1/(4N) cannot beat the largest one.
std::vector<double> radii_for(const std::vector<double>& t_grid, int per_octave, int N) {
  const auto [lo, hi] = std::minmax_element(t_grid.begin(), t_grid.end());
  std::vector<double> radii(t_grid.begin(), t_grid.end());
  const double floor = std::min(*lo, 1.0 / (4.0 * std::max(N, 1)));
  const double step = std::exp2(-1.0 / per_octave);
  for (double rho = *hi; rho >= floor; rho *= step) radii.push_back(rho);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

void check_query(const ModulusQuery& q) {
  if (q.t_grid.empty()) fail(ErrorKind::parameter, "empty t grid");
  for (double t : q.t_grid) {
    if (!(t > 0.0 && t <= 1.0)) fail(ErrorKind::parameter, "t grid values must lie in (0,1]");
  }
  if (q.r < 1) fail(ErrorKind::parameter, "difference order r must be >= 1");
  if (q.l < 0) fail(ErrorKind::parameter, "derivative order l must be >= 0");
  if (q.direction_count < 1) fail(ErrorKind::parameter, "direction_count must be >= 1");
  if (q.radii_per_octave < 1) fail(ErrorKind::parameter, "radii_per_octave must be >= 1");
}

// Best (value, h, alpha) at each radius for q = 2, via the Parseval multiplier.
std::vector<Sample> sweep_l2(const TrigPoly& f, const ModulusQuery& q, const std::vector<double>& radii,
                             const std::vector<std::array<double, 3>>& dirs) {
  const int d = f.dim();
  const auto alphas = multi_indices(d, q.l);
  std::vector<std::array<double, 3>> ks;
  std::vector<std::vector<double>> weights(alphas.size());
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double e = std::norm(coeffs[i]);
    if (e == 0.0) continue;
    const Freq k = f.box().freq(i);
    ks.push_back({double(k[0]), double(k[1]), double(k[2])});
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      double w = e;
      for (int j = 0; j < d; ++j) {
        for (int p = 0; p < alphas[a][j]; ++p) w *= (kTwoPi * k[j]) * (kTwoPi * k[j]);
      }
      weights[a].push_back(w);
    }
  }

  std::vector<Sample> out(radii.size());
  std::vector<double> sums(alphas.size());
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    Sample best;
    for (const auto& u : dirs) {
      const std::array<double, 3> h{radii[ri] * u[0], radii[ri] * u[1], radii[ri] * u[2]};
      std::fill(sums.begin(), sums.end(), 0.0);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase += ks[i][j] * h[j];
        // |1 - e^{i theta}|^2 = 2 - 2 cos(theta)
        const double m = std::pow(2.0 - 2.0 * std::cos(kTwoPi * phase), q.r);
        for (std::size_t a = 0; a < alphas.size(); ++a) sums[a] += weights[a][i] * m;
      }
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const double v = std::sqrt(sums[a]);
        if (v > best.value) best = {v, h, alphas[a]};
      }
    }
    out[ri] = best;
  }
  return out;
}

std::vector<Sample> sweep_sup(const TrigPoly& f, const ModulusQuery& q, const std::vector<double>& radii,
                              const std::vector<std::array<double, 3>>& dirs) {
  const int d = f.dim();
  std::vector<Sample> out(radii.size());
  for (const auto& alpha : multi_indices(d, q.l)) {
    const TrigPoly g = partial_derivative(f, alpha);
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
      for (const auto& u : dirs) {
        const std::array<double, 3> h{radii[ri] * u[0], radii[ri] * u[1], radii[ri] * u[2]};
        const double v = sup_norm(difference(g, std::span<const double>(h.data(), d), q.r), q.oversample);
        if (v > out[ri].value) out[ri] = {v, h, alpha};
      }
    }
  }
  return out;
}

}  // namespace

const char* to_string(NormKind q) { return q == NormKind::l2 ? "2" : "inf"; }

std::vector<double> default_t_grid(int N, int per_octave) {
  if (N < 2) fail(ErrorKind::parameter, "t grid needs N >= 2");
  if (per_octave < 1) fail(ErrorKind::parameter, "per_octave must be >= 1");
  std::vector<double> t;
  const double lo = 1.0 / N;
  const double step = std::exp2(-1.0 / per_octave);
  for (double x = 0.5; x > lo * (1.0 + 1e-9); x *= step) t.push_back(x);
  t.push_back(lo);
  return t;
}

std::vector<std::array<double, 3>> direction_set(int d, int count) {
  if (count < 1) fail(ErrorKind::parameter, "direction count must be >= 1");
  std::vector<std::array<double, 3>> dirs;
  if (d == 1) {
    dirs.push_back({1.0, 0.0, 0.0});
  } else if (d == 2) {
    for (int j = 0; j < count; ++j) {
      const double a = std::numbers::pi * j / count;
      dirs.push_back({std::cos(a), std::sin(a), 0.0});
    }
  } else if (d == 3) {
    dirs.push_back({1.0, 0.0, 0.0});
    dirs.push_back({0.0, 1.0, 0.0});
    dirs.push_back({0.0, 0.0, 1.0});
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      const double z = (j + 0.5) / count;
      const double rho = std::sqrt(1.0 - z * z);
      dirs.push_back({rho * std::cos(golden * j), rho * std::sin(golden * j), z});
    }
  } else {
    fail(ErrorKind::parameter, "dimension must be 1, 2 or 3");
  }
  return dirs;
}

std::vector<ModulusPoint> modulus(const TrigPoly& f, const ModulusQuery& query) {
  check_query(query);
  const auto radii = radii_for(query.t_grid, query.radii_per_octave, f.radius());
  const auto dirs = direction_set(f.dim(), query.direction_count);
  auto best = query.q == NormKind::l2 ? sweep_l2(f, query, radii, dirs) : sweep_sup(f, query, radii, dirs);
  for (std::size_t i = 1; i < best.size(); ++i) {
    if (best[i - 1].value > best[i].value) best[i] = best[i - 1];
  }
  std::vector<ModulusPoint> out;
  out.reserve(query.t_grid.size());
  for (double t : query.t_grid) {
    const auto it = std::lower_bound(radii.begin(), radii.end(), t);
    const Sample& s = best[static_cast<std::size_t>(it - radii.begin())];
    out.push_back({t, std::max(s.value, 0.0), s.h, s.alpha});
  }
  return out;
}

double lip_functional_i(const TrigPoly& f, const Majorant& omega, const ModulusQuery& query) {
  ModulusQuery q = query;
  q.q = NormKind::l2;
  double worst = 0.0;
  for (const auto& pt : modulus(f, q)) {
    const double w = omega(pt.t);
    if (!(w > 0.0)) fail(ErrorKind::degenerate, "majorant vanishes on the t grid");
    worst = std::max(worst, pt.value / w);
  }
  return worst;
}

double lip_functional_ii(const ShellProfile& profile, const Majorant& omega, int r, int l,
                         std::vector<std::int64_t> N_grid) {
  const std::int64_t nbox = std::max(profile.N, 1);
  if (N_grid.empty()) {
    for (std::int64_t N = 1; N <= nbox; ++N) N_grid.push_back(N);
    const auto size = omega.table_size();
    if (!size || *size >= 4 * nbox) N_grid.push_back(4 * nbox);
  }
  double worst = 0.0;
  for (std::int64_t N : N_grid) {
    if (N < 1) fail(ErrorKind::parameter, "N grid values must be >= 1");
    double s = 0.0;
    for (int n = 1; n <= profile.N; ++n) {
      const double x = profile.R[static_cast<std::size_t>(n)] * std::pow(double(n), l) *
                       std::min(1.0, std::pow(double(n) / double(N), r));
      s += x * x;
    }
    worst = std::max(worst, std::sqrt(s) / omega.at(N));
  }
  return worst;
}

FunctionalIII lip_functional_iii(const ShellProfile& profile, const Majorant& omega,
                                 const DiscretizingSequence& seq, int r, int l) {
  FunctionalIII out;
  const std::int64_t top = profile.N;
  for (std::int64_t n = seq.nmax + 1; n <= top; ++n) {
    if (profile.R[static_cast<std::size_t>(n)] != 0.0) {
      out.warnings.push_back("shells beyond nmax = " + std::to_string(seq.nmax) + " ignored");
      break;
    }
  }
  for (std::size_t k = 0; k < seq.blocks(); ++k) {
    const std::int64_t lo = seq.block_begin(k);
    const std::int64_t hi = seq.block_end(k);
    if (lo > top) break;
    if (hi > top && k + 1 < seq.blocks()) {
      out.warnings.push_back("block " + std::to_string(k + 1) + " truncated at n = " + std::to_string(top));
    }
    const bool is_j = seq.labels[k] == BlockLabel::J;
    const int power = is_j ? l + r : l;
    double s = 0.0;
    for (std::int64_t n = lo; n <= std::min(hi, top); ++n) {
      const double x = std::pow(double(n), power) * profile.R[static_cast<std::size_t>(n)];
      s += x * x;
    }
    const double denom = is_j ? omega.scaled_at(hi, r) : omega.at(lo);
    out.value = std::max(out.value, std::sqrt(s) / denom);
  }
  return out;
}

double bernstein_ratio(const TrigPoly& T, int l, int r, int oversample) {
  if (l < 0 || r < 1) fail(ErrorKind::parameter, "need l >= 0 and r >= 1");
  if (T.is_zero()) fail(ErrorKind::undefined_ratio, "Bernstein ratio of the zero polynomial");
  if (T.radius() == 0) fail(ErrorKind::undefined_ratio, "Bernstein ratio needs box radius >= 1");
  const double lo = cs_norm(T, l, oversample);
  const double hi = cs_norm(T, l + r, oversample);
  return hi / (std::pow(double(T.radius()), r) * lo);
}

double reverse_bernstein_ratio(const TrigPoly& F, int l, int r, int N, int oversample) {
  if (l < 0 || r < 1) fail(ErrorKind::parameter, "need l >= 0 and r >= 1");
  if (N < 1) fail(ErrorKind::parameter, "N must be >= 1");
  if (F.is_zero()) fail(ErrorKind::undefined_ratio, "reverse Bernstein ratio of the zero polynomial");
  const auto coeffs = F.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != cplx{} && linf_norm(F.box().freq(i), F.dim()) < N) {
      fail(ErrorKind::precondition, "spectrum meets B_inf(N-1)");
    }
  }
  const double lo = cs_norm(F, l, oversample);
  const double hi = cs_norm(F, l + r, oversample);
  return hi / (std::pow(double(N), r) * lo);
}

}  // namespace lipa
