#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "families.hpp"
#include "lipa/embedding.hpp"
#include "lipa/error.hpp"
#include "lipa/io.hpp"
#include "lipa/kkdl.hpp"
#include "lipa/majorant.hpp"
#include "lipa/smoothness.hpp"

using namespace lipa;
using lipa::cli::FamilySpec;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

struct Output {
  json doc;
  std::string csv;  // empty when the command has no CSV form
  int code = kOk;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // json | csv; empty picks the command's default
  std::string config;
};

struct PolySource {
  std::string input;
  FamilySpec family;

  void add_to(CLI::App* app, const std::string& default_family) {
    family.name = default_family;
    app->add_option("--input", input, "coefficient file (JSON or CSV); overrides --family");
    app->add_option("--family", family.name, "synthetic input")
        ->check(CLI::IsMember({"wave", "random", "decaying"}))
        ->capture_default_str();
    app->add_option("--d", family.d, "dimension of the synthetic input")->capture_default_str();
    app->add_option("--N", family.N, "box radius of the synthetic input")->capture_default_str();
    app->add_option("--freq", family.freq, "wave frequency along x_1")->capture_default_str();
    app->add_option("--decay", family.decay, "shell decay exponent of the decaying family")->capture_default_str();
  }

  TrigPoly load(std::uint64_t seed) const { return input.empty() ? cli::synthesize(family, seed) : load_trigpoly(input); }
};

NormKind parse_norm(const std::string& q) {
  if (q == "2" || q == "l2") return NormKind::l2;
  if (q == "inf" || q == "sup") return NormKind::sup;
  fail(ErrorKind::parameter, "--q must be 2 or inf");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      fail(ErrorKind::parameter, "cannot parse list entry '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// ---- discretize

struct DiscretizeArgs {
  std::string omega;
  double r = 1.0;
  double lambda = 0.0;
  std::int64_t nmax = 10000;
};

Output run_discretize(const DiscretizeArgs& a) {
  const auto omega = parse_majorant(a.omega, a.r);
  const auto seq = discretize(omega, a.lambda, a.r, a.nmax);
  const auto rep = verify_discretizing_properties(seq, omega);
  Output o;
  o.doc = {{"omega", to_json(omega)},
           {"sequence", to_json(seq)},
           {"properties",
            {{"ok", rep.ok()},
             {"starts_at_one", rep.starts_at_one},
             {"growth", rep.growth},
             {"omega_decay", rep.omega_decay},
             {"scaled_growth", rep.scaled_growth},
             {"brackets", rep.brackets},
             {"worst_i_ratio", rep.worst_i_ratio},
             {"worst_j_ratio", rep.worst_j_ratio},
             {"violations", rep.violations},
             {"notes", rep.notes}}}};
  o.csv = "k,mu,end,label\n";
  for (std::size_t k = 0; k < seq.blocks(); ++k) {
    o.csv += std::to_string(k + 1) + "," + std::to_string(seq.block_begin(k)) + "," + std::to_string(seq.block_end(k)) +
             "," + to_string(seq.labels[k]) + "\n";
  }
  o.code = rep.ok() ? kOk : kPropertyFailure;
  return o;
}

// ---- modulus

struct ModulusArgs {
  PolySource source;
  int r = 1;
  int l = 0;
  std::string q = "2";
  int per_octave = 4;
  int directions = 16;
  int oversample = 8;
};

Output run_modulus(const ModulusArgs& a, std::uint64_t seed) {
  const auto f = a.source.load(seed);
  ModulusQuery mq;
  mq.r = a.r;
  mq.l = a.l;
  mq.q = parse_norm(a.q);
  mq.t_grid = default_t_grid(std::max(f.radius(), 2), a.per_octave);
  mq.direction_count = a.directions;
  mq.oversample = a.oversample;
  const auto pts = modulus(f, mq);
  Output o;
  o.doc = {{"d", f.dim()}, {"N", f.radius()}, {"r", a.r}, {"l", a.l}, {"q", to_string(mq.q)}, {"points", to_json(pts, f.dim())}};
  o.csv = modulus_csv(pts, f.dim());
  return o;
}

// ---- kkdl

struct KkdlArgs {
  PolySource source;
  int r = 1;
  int l = 0;
  int trials = 32;
  double tolerance = 50.0;
  std::string save_f;
};

Output run_kkdl(const KkdlArgs& a, std::uint64_t seed) {
  if (!(a.tolerance >= 1.0)) fail(ErrorKind::parameter, "--tolerance must be >= 1");
  const auto g = a.source.load(seed);
  KkdlOptions opt;
  opt.trials = a.trials;
  const auto rep = construct_dominating(g, a.r, a.l, seed, opt);
  double lo = 0.0, hi = 0.0;
  if (!rep.modulus_ratios.empty()) {
    lo = hi = rep.modulus_ratios.front().second;
    for (const auto& [t, v] : rep.modulus_ratios) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const bool ratios_ok = rep.modulus_ratios.empty() || (lo >= 1.0 / a.tolerance && hi <= a.tolerance);
  Output o;
  o.doc = to_json(rep);
  o.doc["ratio_bracket"] = {lo, hi};
  o.doc["tolerance"] = a.tolerance;
  o.doc["ratios_ok"] = ratios_ok;
  if (!a.save_f.empty()) {
    write_file(a.save_f, to_json(rep.f).dump() + "\n");
    o.doc["f_path"] = a.save_f;
  }
  o.csv = ratio_csv(rep);
  o.code = rep.domination_ok && ratios_ok ? kOk : kPropertyFailure;
  return o;
}

// ---- embed

struct EmbedArgs {
  EmbeddingQuery query;
  std::string omega;
  bool constants = false;
  std::int64_t nmax = 1024;
  std::int64_t iterations = 20000;
  int quadrature = 32;
  std::string witness;
  std::int64_t witness_start = 32;
  std::int64_t witness_iterations = 5000;
};

std::string estimate_cells(const Estimate& e) {
  return std::string(to_string(e.state)) + "," + (std::isfinite(e.value) ? format_double(e.value) : "");
}

Output run_embed(EmbedArgs a, std::uint64_t seed) {
  a.query.omega = parse_majorant(a.omega, a.query.r);
  EmbeddingReport rep;
  if (a.constants) {
    ConstantsOptions opt;
    opt.nmax = a.nmax;
    opt.iterations = a.iterations;
    opt.seed = seed;
    opt.quadrature_points = a.quadrature;
    rep = embedding_report(a.query, opt);
  } else {
    rep = classify(a.query, a.quadrature);
  }
  Output o;
  o.doc = to_json(rep);
  if (!a.witness.empty()) {
    if (rep.verdict != Verdict::fails) {
      o.doc["witness_skipped"] = "the query does not fail";
    } else {
      WitnessOptions wo;
      wo.n_start = a.witness_start;
      wo.iterations = a.witness_iterations;
      const auto w = sharpness_witness(a.query, a.nmax, seed, wo);
      write_file(a.witness, growth_csv(w.rows));
      o.doc["witness_path"] = a.witness;
    }
  }
  o.csv = "theta,case,verdict,integral_state,integral_value,bruteforce_state,bruteforce,discretized_state,discretized,"
          "integral_k_state,integral_k,agreement_bracket\n";
  o.csv += format_double(rep.theta) + "," + to_string(rep.kase) + "," + to_string(rep.verdict) + "," +
           estimate_cells(rep.integral_value) + "," + estimate_cells(rep.k_bruteforce) + "," +
           estimate_cells(rep.k_discretized) + "," + estimate_cells(rep.k_integral) + "," +
           (std::isfinite(rep.agreement_bracket) ? format_double(rep.agreement_bracket) : "") + "\n";
  return o;
}

// ---- lemma22

struct Lemma22Args {
  std::string alpha;
  std::string f;
  int size = 100;
  double p = 1.0;
  double q = 1.0;
  double r = 1.0;
  double lambda = 0.0;  // 0 picks default_lambda(p r)
};

Output run_lemma22(const Lemma22Args& a, std::uint64_t seed) {
  std::vector<double> alpha, f;
  if (a.alpha.empty() || a.f.empty()) {
    if (a.size < 1) fail(ErrorKind::parameter, "--size must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    alpha.resize(static_cast<std::size_t>(a.size));
    f.resize(static_cast<std::size_t>(a.size));
    for (auto& x : alpha) x = u(rng);
    for (auto& x : f) x = u(rng);
  }
  if (!a.alpha.empty()) alpha = parse_list(a.alpha);
  if (!a.f.empty()) f = parse_list(a.f);
  const double lambda = a.lambda > 0.0 ? a.lambda : default_lambda(a.p * a.r);
  const auto res = lemma22_equivalence(alpha, f, a.p, a.q, a.r, lambda);
  Output o;
  o.doc = {{"p", a.p},   {"q", a.q},     {"r", a.r},         {"lambda", lambda},
           {"lhs", res.lhs}, {"rhs", res.rhs}, {"ratio", res.ratio}, {"sequence", to_json(res.seq)}};
  o.csv = "lhs,rhs,ratio\n" + format_double(res.lhs) + "," + format_double(res.rhs) + "," + format_double(res.ratio) + "\n";
  return o;
}

// ---- bernstein

struct BernsteinArgs {
  PolySource source;
  int l = 0;
  int r = 1;
  int cutoff = 0;  // 0 picks max(1, N/2)
  int oversample = 8;
};

Output run_bernstein(const BernsteinArgs& a, std::uint64_t seed) {
  const auto T = a.source.load(seed);
  const int N = T.radius();
  const int cutoff = a.cutoff > 0 ? a.cutoff : std::max(1, N / 2);
  if (cutoff > N) fail(ErrorKind::parameter, "--cutoff must not exceed the box radius");
  const double forward = bernstein_ratio(T, a.l, a.r, a.oversample);
  const auto F = restrict_to_window(T, cutoff, N);
  Output o;
  o.doc = {{"d", T.dim()}, {"N", N}, {"l", a.l}, {"r", a.r}, {"cutoff", cutoff}, {"bernstein_ratio", forward}};
  std::string reverse_cell;
  if (F.is_zero()) {
    o.doc["reverse_bernstein_ratio"] = nullptr;
  } else {
    const double reverse = reverse_bernstein_ratio(F, a.l, a.r, cutoff, a.oversample);
    o.doc["reverse_bernstein_ratio"] = reverse;
    reverse_cell = format_double(reverse);
  }
  o.csv = "N,cutoff,bernstein_ratio,reverse_bernstein_ratio\n" + std::to_string(N) + "," + std::to_string(cutoff) + "," +
          format_double(forward) + "," + reverse_cell + "\n";
  return o;
}

// ---- represent

struct RepresentArgs {
  std::string omega;
  double p = 1.0;
  double r = 1.0;
  std::int64_t M = 256;
};

Output run_represent(const RepresentArgs& a) {
  const auto omega = parse_majorant(a.omega, a.r);
  const auto w = represent_weights(omega, a.p, a.r, a.M);
  Output o;
  o.doc = {{"omega", to_json(omega)}, {"p", w.p},         {"r", w.r},
           {"M", a.M},                {"lower", w.lower}, {"upper", w.upper},
           {"alpha", w.alpha}};
  o.csv = "N,omega,bar_omega,ratio\n";
  for (std::int64_t N = 1; N <= a.M; ++N) {
    const double om = omega.at(N), bar = w.value(N);
    o.csv += std::to_string(N) + "," + format_double(om) + "," + format_double(bar) + "," + format_double(bar / om) + "\n";
  }
  return o;
}

// ---- config

std::optional<std::string> find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.starts_with("--config=")) return a.substr(9);
  }
  return std::nullopt;
}

/// Each key of the JSON object becomes "--key=value" after the user's
/// arguments, so config values override flags.
std::vector<std::string> config_args(const std::string& path) {
  const json cfg = json::parse(read_file(path));
  if (!cfg.is_object()) fail(ErrorKind::io, "config must be a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : cfg.items()) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean() || value.is_number()) {
      text = value.dump();
    } else {
      fail(ErrorKind::io, "config value for '" + key + "' must be a string, number or boolean");
    }
    out.push_back("--" + flag + "=" + text);
  }
  return out;
}

void emit(const Output& o, const Globals& g, const std::string& default_format) {
  const std::string fmt = g.format.empty() ? default_format : g.format;
  std::string text;
  if (fmt == "csv") {
    if (o.csv.empty()) fail(ErrorKind::parameter, "this command has no CSV output");
    text = o.csv;
  } else {
    text = o.doc.dump(2) + "\n";
  }
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_file(g.out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz-class majorants, dominating constructions and A_p embeddings"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--out", g.out, "write the report here instead of stdout");
  app.add_option("--format", g.format, "report format (default depends on the command)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", g.config, "JSON object of flag values; its values override the command line");

  DiscretizeArgs da;
  auto* disc = app.add_subcommand("discretize", "discretizing sequence of a majorant and its properties");
  disc->add_option("--omega", da.omega, "majorant: pow(a), log(b), pow(a)*log(b) or table:FILE")->required();
  disc->add_option("--r", da.r, "order r")->capture_default_str();
  disc->add_option("--lambda", da.lambda, "lambda > 4")->required();
  disc->add_option("--nmax", da.nmax, "largest frequency")->capture_default_str();

  ModulusArgs ma;
  auto* mod = app.add_subcommand("modulus", "t-sweep of the modulus of smoothness");
  ma.source.add_to(mod, "random");
  mod->add_option("--r", ma.r, "difference order")->capture_default_str();
  mod->add_option("--l", ma.l, "derivative order")->capture_default_str();
  mod->add_option("--q", ma.q, "norm: 2 or inf")->capture_default_str();
  mod->add_option("--per-octave", ma.per_octave, "t points per halving")->capture_default_str();
  mod->add_option("--directions", ma.directions, "sampled directions of h (d >= 2)")->capture_default_str();
  mod->add_option("--oversample", ma.oversample, "sup-norm grid factor")->capture_default_str();

  KkdlArgs ka;
  auto* kk = app.add_subcommand("kkdl", "dominating polynomial with controlled modulus");
  ka.source.add_to(kk, "decaying");
  kk->add_option("--r", ka.r, "difference order")->capture_default_str();
  kk->add_option("--l", ka.l, "derivative order")->capture_default_str();
  kk->add_option("--trials", ka.trials, "sign patterns tried per block")->capture_default_str();
  kk->add_option("--tolerance", ka.tolerance, "accepted modulus ratio bracket [1/C, C]")->capture_default_str();
  kk->add_option("--save-f", ka.save_f, "write the constructed polynomial (JSON)");

  EmbedArgs ea;
  auto* emb = app.add_subcommand("embed", "classify Lip^{r,l} against A_p and estimate the constants");
  emb->add_option("--d", ea.query.d, "dimension")->capture_default_str();
  emb->add_option("--p", ea.query.p, "A_p exponent in (0,2)")->capture_default_str();
  emb->add_option("--r", ea.query.r, "difference order")->capture_default_str();
  emb->add_option("--l", ea.query.l, "derivative order")->capture_default_str();
  emb->add_option("--omega", ea.omega, "majorant: pow(a), log(b), pow(a)*log(b) or table:FILE")->required();
  emb->add_flag("--continuous", ea.query.continuous, "label the query as the R^d variant");
  emb->add_flag("--constants", ea.constants, "run the three constant estimators");
  emb->add_option("--nmax", ea.nmax, "truncation for constants and witnesses")->capture_default_str();
  emb->add_option("--iterations", ea.iterations, "brute-force ascent steps")->capture_default_str();
  emb->add_option("--quadrature", ea.quadrature, "Gauss-Legendre points per panel")->capture_default_str();
  emb->add_option("--witness", ea.witness, "write the witness growth table (CSV) for failing queries");
  emb->add_option("--witness-start", ea.witness_start, "first Nmax of the growth table")->capture_default_str();
  emb->add_option("--witness-iterations", ea.witness_iterations, "ascent steps per witness")->capture_default_str();

  Lemma22Args la;
  auto* l22 = app.add_subcommand("lemma22", "block splitting of a weighted double sum");
  l22->add_option("--alpha", la.alpha, "comma-separated alpha_n (random if omitted)");
  l22->add_option("--f", la.f, "comma-separated f_j (random if omitted)");
  l22->add_option("--size", la.size, "length of random sequences")->capture_default_str();
  l22->add_option("--p", la.p, "p > 0")->capture_default_str();
  l22->add_option("--q", la.q, "q in (0,1]")->capture_default_str();
  l22->add_option("--r", la.r, "r > 0")->capture_default_str();
  l22->add_option("--lambda", la.lambda, "lambda > 4 (default max(5, 4^{pr}+1))");

  BernsteinArgs ba;
  auto* bern = app.add_subcommand("bernstein", "forward and reverse Bernstein ratios");
  ba.source.add_to(bern, "random");
  bern->add_option("--l", ba.l, "derivative order")->capture_default_str();
  bern->add_option("--r", ba.r, "extra derivative order")->capture_default_str();
  bern->add_option("--cutoff", ba.cutoff, "high-pass cutoff for the reverse ratio (default N/2)");
  bern->add_option("--oversample", ba.oversample, "sup-norm grid factor")->capture_default_str();

  RepresentArgs ra;
  auto* rep = app.add_subcommand("represent", "nonnegative weights reconstructing a majorant");
  rep->add_option("--omega", ra.omega, "majorant: pow(a), log(b), pow(a)*log(b) or table:FILE")->required();
  rep->add_option("--p", ra.p, "p in (0,2)")->capture_default_str();
  rep->add_option("--r", ra.r, "order r")->capture_default_str();
  rep->add_option("--M", ra.M, "number of weights")->capture_default_str();

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    if (const auto path = find_config(argc, argv)) {
      const auto extra = config_args(*path);
      args.insert(args.end(), extra.begin(), extra.end());
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (disc->parsed()) {
      const auto o = run_discretize(da);
      emit(o, g, "json");
      return o.code;
    }
    if (mod->parsed()) {
      const auto o = run_modulus(ma, g.seed);
      emit(o, g, "csv");
      return o.code;
    }
    if (kk->parsed()) {
      const auto o = run_kkdl(ka, g.seed);
      emit(o, g, "json");
      return o.code;
    }
    if (emb->parsed()) {
      const auto o = run_embed(ea, g.seed);
      emit(o, g, "json");
      return o.code;
    }
    if (l22->parsed()) {
      const auto o = run_lemma22(la, g.seed);
      emit(o, g, "json");
      return o.code;
    }
    if (bern->parsed()) {
      const auto o = run_bernstein(ba, g.seed);
      emit(o, g, "json");
      return o.code;
    }
    if (rep->parsed()) {
      const auto o = run_represent(ra);
      emit(o, g, "json");
      return o.code;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
