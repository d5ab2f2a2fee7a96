#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "lipa/error.hpp"
#include "lipa/io.hpp"

using namespace lipa;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected lipa::Error");
  return ErrorKind::domain;
}

std::filesystem::path scratch(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("lipa_io_") + name);
}

TrigPoly random_poly(int d, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  TrigPoly f(d, N);
  for (auto& c : f.coeffs()) {
    if (rng() % 3 == 0) c = cplx{g(rng) / 3.0, g(rng) * 1e-7};
  }
  return f;
}

void check_same(const TrigPoly& a, const TrigPoly& b) {
  REQUIRE(a.box() == b.box());
  CHECK(a.real_valued() == b.real_valued());
  for (std::size_t i = 0; i < a.box().size(); ++i) CHECK(a.coeffs()[i] == b.coeffs()[i]);
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, std::nextafter(1.0, 2.0)}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("majorant JSON") {
  const auto pl = Majorant::power_log(0.25, -1.5, 3.0);
  const auto back = majorant_from_json(json::parse(to_json(pl).dump()));
  REQUIRE(back.as_power_log());
  CHECK(back.as_power_log()->a == 0.25);
  CHECK(back.as_power_log()->b == -1.5);
  CHECK(back.as_power_log()->scale == 3.0);

  const auto tab = Majorant::tabulated({1.0, 0.7, 1.0 / 3.0});
  const auto tb = majorant_from_json(json::parse(to_json(tab).dump()));
  REQUIRE(tb.as_tabulated());
  CHECK(tb.as_tabulated()->values == tab.as_tabulated()->values);

  CHECK(kind_of([] { (void)majorant_from_json(json{{"kind", "spline"}}); }) == ErrorKind::io);
  CHECK(kind_of([] { (void)majorant_from_json(json{{"kind", "power-log"}, {"a", "x"}}); }) == ErrorKind::io);
}

TEST_CASE("sequence JSON") {
  const auto seq = discretize(Majorant::power_log(1.0, 0.0), 5.0, 2.0, 200);
  const auto back = sequence_from_json(json::parse(to_json(seq).dump()));
  CHECK(back.mu == seq.mu);
  CHECK(back.labels == seq.labels);
  CHECK(back.lambda == seq.lambda);
  CHECK(back.r == seq.r);
  CHECK(back.nmax == seq.nmax);
  const auto j = to_json(seq);
  CHECK(j["mu"] == json::array({1, 6, 31, 156}));
}

TEST_CASE("trigpoly JSON and CSV round trips are exact") {
  for (int d = 1; d <= 3; ++d) {
    const auto f = random_poly(d, d == 3 ? 3 : 6, 10 + static_cast<std::uint64_t>(d));
    check_same(trigpoly_from_json(json::parse(to_json(f).dump())), f);
    check_same(trigpoly_from_csv(trigpoly_to_csv(f)), f);
  }
  TrigPoly h(2, 2);
  h.at({1, -1, 0}) = cplx{0.5, 0.25};
  h.at({-1, 1, 0}) = cplx{0.5, -0.25};
  h.set_real_valued(true);
  check_same(trigpoly_from_csv(trigpoly_to_csv(h)), h);

  const auto csv = trigpoly_to_csv(h);
  CHECK(csv.starts_with("d,N,real\n2,2,1\nk_1,k_2,re,im\n-1,1,"));
  CHECK(to_json(h)["rows"].size() == 2);
}

TEST_CASE("load_trigpoly sniffs the format") {
  const auto f = random_poly(2, 4, 3);
  const auto pj = scratch("f.json");
  const auto pc = scratch("f.csv");
  write_file(pj, to_json(f).dump());
  write_file(pc, trigpoly_to_csv(f));
  check_same(load_trigpoly(pj), f);
  check_same(load_trigpoly(pc), f);

  write_file(pj, "{\"d\":1,\"N\":1,\"rows\":[[2,1.0,0.0]]}");
  CHECK(kind_of([&] { (void)load_trigpoly(pj); }) == ErrorKind::io);
  write_file(pj, "{\"d\":1,");
  CHECK(kind_of([&] { (void)load_trigpoly(pj); }) == ErrorKind::io);
  write_file(pc, "d,N,real\n1,1,0\nk_1,re,im\n0,1.0\n");
  CHECK(kind_of([&] { (void)load_trigpoly(pc); }) == ErrorKind::io);
  CHECK(kind_of([] { (void)load_trigpoly("/nonexistent/lipa.json"); }) == ErrorKind::io);
  std::filesystem::remove(pj);
  std::filesystem::remove(pc);
}

TEST_CASE("majorant mini-language") {
  auto pl = [](const Majorant& m) { return *m.as_power_log(); };
  CHECK(pl(parse_majorant("pow(0.5)", 1)).a == 0.5);
  CHECK(pl(parse_majorant("log(-2)", 1)).b == -2.0);
  CHECK(pl(parse_majorant("log(-2)", 1)).a == 0.0);
  const auto both = pl(parse_majorant(" pow(0.25) * log(-0.5) ", 1));
  CHECK(both.a == 0.25);
  CHECK(both.b == -0.5);
  CHECK(pl(parse_majorant("pow(r)", 3)).a == 3.0);
  CHECK(pl(parse_majorant("pow(0.5*r)", 2)).a == 1.0);
  CHECK(pl(parse_majorant("pow(0.5\xC2\xB7r)", 2)).a == 1.0);
  CHECK(pl(parse_majorant("log(0.5)*pow(1)", 2)).a == 1.0);

  for (const char* bad : {"", "pow", "pow(x)", "pow(1)*", "pow(1)pow(2)", "pow(1)*pow(2)", "exp(1)", "pow(2*s)"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { (void)parse_majorant(bad, 1); }) == ErrorKind::parameter);
  }
}

TEST_CASE("majorant tables from files") {
  const auto p = scratch("table.txt");
  write_file(p, "# omega(1/n)\n1 0.5\n0.25   # tail\n\n0.125\n");
  const auto m = parse_majorant("table:" + p.string(), 1);
  REQUIRE(m.as_tabulated());
  CHECK(m.as_tabulated()->values == std::vector<double>{1, 0.5, 0.25, 0.125});

  write_file(p, to_json(Majorant::power_log(0.5, 1.0)).dump());
  CHECK(parse_majorant("table:" + p.string(), 1).as_power_log()->b == 1.0);

  write_file(p, "1 0.5 half\n");
  CHECK(kind_of([&] { (void)parse_majorant("table:" + p.string(), 1); }) == ErrorKind::parameter);
  std::filesystem::remove(p);
  CHECK(kind_of([&] { (void)parse_majorant("table:" + p.string(), 1); }) == ErrorKind::io);
}

TEST_CASE("report serializers") {
  EmbeddingQuery q;
  q.d = 1;
  q.p = 1.0;
  q.r = 1;
  q.omega = Majorant::power_log(0.2, 0.0);
  const auto rep = classify(q);
  const auto j = to_json(rep);
  CHECK(j["case"] == "(3)(ii)");
  CHECK(j["verdict"] == "fails");
  CHECK(j["integral_value"]["state"] == "divergent");
  CHECK(!j.contains("K"));

  Estimate nan_value;
  CHECK(to_json(nan_value)["value"].is_null());

  const auto csv = growth_csv({{32, 1.5, 2.0}, {64, 1.75, 2.0}});
  CHECK(csv == "Nmax,ap_norm,lip_functional\n32,1.5,2\n64,1.75,2\n");

  ModulusPoint pt;
  pt.t = 0.5;
  pt.value = 2.0;
  pt.argmax_h = {0.25, -0.125, 0};
  pt.argmax_alpha = {1, 0, 0};
  CHECK(modulus_csv({pt}, 2) == "t,value,h_1,h_2,alpha_1,alpha_2\n0.5,2,0.25,-0.125,1,0\n");
  CHECK(to_json(std::vector<ModulusPoint>{pt}, 2)[0]["argmax_h"].size() == 2);
}
