#include "lipa/kkdl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "lipa/error.hpp"
#include "lipa/smoothness.hpp"

namespace lipa {

namespace {

double euclid(const Freq& k, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += double(k[i]) * k[i];
  return std::sqrt(s);
}

// V_0 read as the limit of V_n: keeps a_0 and kills everything else.
TrigPoly inner_projection(const TrigPoly& h, int n) {
  if (n >= 1) return vallee_poussin(h, n);
  TrigPoly out(h.dim(), 0);
  out.coeffs()[0] = h.coeff_or_zero({0, 0, 0});
  return out;
}

std::set<std::size_t> support_of(const TrigPoly& p, const Box& frame) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < p.box().size(); ++i) {
    if (p.coeffs()[i] != cplx{}) out.insert(frame.index(p.box().freq(i)));
  }
  return out;
}

bool window_ok(const BlockPolynomial& b) {
  const auto& p = b.poly;
  for (std::size_t i = 0; i < p.box().size(); ++i) {
    const cplx c = p.coeffs()[i];
    if (c == cplx{}) continue;
    if (c.imag() != 0.0) return false;
    const int n = linf_norm(p.box().freq(i), p.dim());
    if (n > 2 * b.mu_hi || 2 * n <= b.mu_lo) return false;
  }
  return true;
}

}  // namespace

FlattenResult kkdl_flatten(const TrigPoly& c, int s, int trials, std::uint64_t seed, int oversample) {
  if (trials < 1) fail(ErrorKind::parameter, "trials must be >= 1");
  if (s < 0) fail(ErrorKind::parameter, "smoothness order s must be >= 0");
  const int d = c.dim();
  std::vector<std::size_t> support;
  std::vector<double> amp;
  FlattenResult out;
  for (std::size_t i = 0; i < c.box().size(); ++i) {
    const double m = std::abs(c.coeffs()[i]);
    if (m == 0.0) continue;
    support.push_back(i);
    amp.push_back(m);
    const double w = m * std::pow(euclid(c.box().freq(i), d), s);
    out.budget += w * w;
  }
  out.budget = std::sqrt(out.budget);
  out.poly = TrigPoly(c.box(), std::vector<cplx>(c.box().size()));
  if (support.empty()) return out;

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  TrigPoly trial(c.box(), std::vector<cplx>(c.box().size()));
  out.achieved = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    for (std::size_t j = 0; j < support.size(); ++j) trial.coeffs()[support[j]] = coin(rng) ? amp[j] : -amp[j];
    const double norm = cs_norm(trial, s, oversample);
    if (norm < out.achieved) {
      out.achieved = norm;
      out.poly = trial;
    }
  }
  out.ratio = out.budget > 0.0 ? out.achieved / out.budget : 0.0;
  return out;
}

TrigPoly restrict_to_window(const TrigPoly& a, int lo, int hi) {
  TrigPoly out(a.dim(), std::min(a.radius(), std::max(hi, 0)));
  for (std::size_t i = 0; i < a.box().size(); ++i) {
    const Freq k = a.box().freq(i);
    const int n = linf_norm(k, a.dim());
    if (n >= lo && n <= hi) out.coeffs()[out.box().index(k)] = a.coeffs()[i];
  }
  return out;
}

BlockPolynomial build_block(const TrigPoly& a, const DiscretizingSequence& seq, std::size_t k,
                            const Majorant& omega, int l, int r, std::uint64_t seed, const KkdlOptions& opt) {
  if (k >= seq.blocks()) fail(ErrorKind::parameter, "block index out of range");
  BlockPolynomial b;
  b.k = static_cast<int>(k) + 1;
  b.mode = seq.labels[k];
  b.mu_lo = static_cast<int>(seq.block_begin(k));
  b.mu_hi = static_cast<int>(seq.block_end(k));
  for (std::size_t i = 0; i < a.box().size(); ++i) {
    if (a.coeffs()[i] == cplx{}) continue;
    const int n = linf_norm(a.box().freq(i), a.dim());
    if (n < b.mu_lo || n > b.mu_hi) fail(ErrorKind::precondition, "amplitudes leak outside the block window");
  }
  b.budget = b.mode == BlockLabel::I ? omega.at(b.mu_lo) : omega.scaled_at(b.mu_hi, r);

  const int s = b.mode == BlockLabel::I ? l : l + r;
  const auto flat = kkdl_flatten(a, s, opt.trials, seed, opt.oversample);
  b.flatten_ratio = flat.ratio;
  const TrigPoly& h = flat.poly;
  b.poly = vallee_poussin(h + cplx{-1.0} * inner_projection(h, b.mu_lo / 2), b.mu_hi);
  if (!b.poly.is_zero()) {
    b.achieved_cl = cs_norm(b.poly, l, opt.oversample);
    b.achieved_clr = cs_norm(b.poly, l + r, opt.oversample);
  }
  return b;
}

DominationCheck verify_domination(const TrigPoly& f, const TrigPoly& g) {
  if (f.dim() != g.dim()) fail(ErrorKind::box_mismatch, "dimension mismatch");
  if (f.radius() < g.radius()) fail(ErrorKind::box_mismatch, "f's box does not contain g's");
  DominationCheck out;
  bool any = false;
  for (std::size_t i = 0; i < g.box().size(); ++i) {
    const double gi = std::abs(g.coeffs()[i]);
    if (gi == 0.0) continue;
    const double margin = std::abs(f[g.box().freq(i)]) - gi;
    out.margin = any ? std::min(out.margin, margin) : margin;
    any = true;
  }
  out.ok = out.margin >= 0.0;
  return out;
}

Majorant quasiconcave_envelope(const std::vector<std::pair<double, double>>& samples, int r, std::int64_t n_max) {
  if (samples.empty()) fail(ErrorKind::parameter, "no samples for the envelope");
  if (n_max < 1) fail(ErrorKind::parameter, "n_max must be >= 1");
  std::vector<double> table(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double t = 1.0 / double(n);
    double v = 0.0;
    for (const auto& [tj, mj] : samples) v = std::max(v, mj * std::min(1.0, std::pow(t / tj, r)));
    table[static_cast<std::size_t>(n - 1)] = v;
  }
  return Majorant::tabulated(std::move(table));
}

ConstructionReport construct_dominating(const TrigPoly& g, int r, int l, std::uint64_t seed,
                                        const KkdlOptions& opt) {
  if (g.is_zero()) fail(ErrorKind::precondition, "g must be nonzero");
  if (r < 1 || l < 0) fail(ErrorKind::parameter, "need r >= 1 and l >= 0");
  const int d = g.dim();
  const int N = g.radius();

  ConstructionReport rep;
  rep.seed = seed;
  rep.r = r;
  rep.l = l;
  rep.constant_term = std::abs(g.coeff_or_zero({0, 0, 0}));

  TrigPoly a(d, N);
  for (std::size_t i = 0; i < a.box().size(); ++i) a.coeffs()[i] = std::abs(g.coeffs()[i]);
  rep.f = TrigPoly(d, N);
  rep.f.coeffs()[rep.f.box().index({0, 0, 0})] = rep.constant_term;

  const bool trivial = N == 0 || restrict_to_window(a, 1, N).is_zero();
  if (trivial) {
    // Only a constant term: nothing to discretize.
    rep.omega = Majorant::tabulated({1.0});
    rep.domination_ok = verify_domination(rep.f, g).ok;
    rep.windows_ok = rep.disjoint_ok = true;
    return rep;
  }

  // Dyadic samples of omega_r(D^l g, t)_2, then their least r-quasiconcave majorant.
  ModulusQuery q;
  q.r = r;
  q.l = l;
  q.q = NormKind::l2;
  q.direction_count = opt.direction_count;
  for (double t = 1.0; t > 0.5 / N; t *= 0.5) q.t_grid.push_back(t);
  std::vector<std::pair<double, double>> samples;
  for (const auto& pt : modulus(g, q)) samples.emplace_back(pt.t, pt.value);
  rep.omega = quasiconcave_envelope(samples, r, N);
  rep.seq = discretize(rep.omega, default_lambda(r), r, N);

  for (std::size_t k = 0; k < rep.seq.blocks(); ++k) {
    const int lo = static_cast<int>(rep.seq.block_begin(k));
    const int hi = static_cast<int>(rep.seq.block_end(k));
    const auto window = restrict_to_window(a, lo, hi);
    auto block = build_block(window, rep.seq, k, rep.omega, l, r, seed ^ (k + 1), opt);
    // i^k rotation: real S_k lands on the real axis for even k, imaginary for odd.
    TrigPoly rotated = block.poly;
    static const cplx kPowI[4] = {1.0, cplx{0, 1}, -1.0, cplx{0, -1}};
    rotated *= kPowI[(k + 1) % 4];
    rep.f += rotated;
    rep.flatten_constants.push_back(block.flatten_ratio);
    rep.per_block.push_back(std::move(block));
  }

  const auto dom = verify_domination(rep.f, g);
  rep.domination_ok = dom.ok;
  rep.domination_margin = dom.margin;

  rep.windows_ok = std::all_of(rep.per_block.begin(), rep.per_block.end(), window_ok);
  const Box frame(d, 2 * N);
  rep.disjoint_ok = true;
  for (std::size_t k = 0; k + 2 < rep.per_block.size(); ++k) {
    const auto s0 = support_of(rep.per_block[k].poly, frame);
    for (std::size_t idx : support_of(rep.per_block[k + 2].poly, frame)) {
      if (s0.count(idx)) rep.disjoint_ok = false;
    }
  }

  ModulusQuery qf;
  qf.r = r;
  qf.l = l;
  qf.direction_count = opt.direction_count;
  qf.oversample = opt.oversample;
  qf.t_grid = N >= 2 ? default_t_grid(N, opt.t_per_octave) : std::vector<double>{0.5};
  qf.q = NormKind::sup;
  const auto sup_pts = modulus(rep.f, qf);
  qf.q = NormKind::l2;
  const auto l2_pts = modulus(rep.f, qf);
  for (std::size_t i = 0; i < sup_pts.size(); ++i) {
    const double w = rep.omega(sup_pts[i].t);
    rep.modulus_ratios.emplace_back(sup_pts[i].t, sup_pts[i].value / w);
    rep.lower_ratios.emplace_back(l2_pts[i].t, l2_pts[i].value / w);
  }
  return rep;
}

}  // namespace lipa
