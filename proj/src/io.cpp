#include "lipa/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lipa/error.hpp"

namespace lipa {

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) fail(ErrorKind::io, std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, const char* what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(ErrorKind::parameter, std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  }
  return v;
}

// number | r | c*r | c·r
double parse_exponent(std::string_view s, double r) {
  s = trim(s);
  for (std::string_view mul : {"*", "\xC2\xB7"}) {
    const auto pos = s.find(mul);
    if (pos == std::string_view::npos) continue;
    if (trim(s.substr(pos + mul.size())) != "r") fail(ErrorKind::parameter, "exponent must be c*r, got '" + std::string(s) + "'");
    return parse_double(s.substr(0, pos), "exponent") * r;
  }
  if (s == "r") return r;
  return parse_double(s, "exponent");
}

Majorant parse_table(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') return majorant_from_json(json::parse(body));
  std::vector<double> values;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream words(line);
    std::string w;
    while (words >> w) values.push_back(parse_double(w, "table value"));
  }
  return Majorant::tabulated(std::move(values));
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const Majorant& m) {
  if (const auto* pl = m.as_power_log()) return {{"kind", "power-log"}, {"a", pl->a}, {"b", pl->b}, {"scale", pl->scale}};
  return {{"kind", "tabulated"}, {"values", m.as_tabulated()->values}};
}

Majorant majorant_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail(ErrorKind::io, "majorant JSON needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "power-log") {
    return Majorant::power_log(number(j, "a"), number(j, "b"), j.contains("scale") ? number(j, "scale") : 1.0);
  }
  if (kind == "tabulated") return Majorant::tabulated(j.at("values").get<std::vector<double>>());
  fail(ErrorKind::io, "unknown majorant kind '" + kind + "'");
}

json to_json(const DiscretizingSequence& s) {
  json labels = json::array();
  for (auto l : s.labels) labels.push_back(to_string(l));
  return {{"mu", s.mu}, {"labels", labels}, {"lambda", s.lambda}, {"r", s.r}, {"nmax", s.nmax}};
}

DiscretizingSequence sequence_from_json(const json& j) {
  DiscretizingSequence s;
  s.mu = j.at("mu").get<std::vector<std::int64_t>>();
  for (const auto& l : j.at("labels")) {
    const auto v = l.get<std::string>();
    if (v != "I" && v != "J") fail(ErrorKind::io, "block label must be I or J");
    s.labels.push_back(v == "I" ? BlockLabel::I : BlockLabel::J);
  }
  if (s.labels.size() != s.mu.size()) fail(ErrorKind::io, "mu and labels differ in length");
  s.lambda = number(j, "lambda");
  s.r = number(j, "r");
  s.nmax = j.contains("nmax") ? j.at("nmax").get<std::int64_t>() : (s.mu.empty() ? 0 : s.mu.back());
  return s;
}

json to_json(const TrigPoly& f) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.box().size(); ++i) {
    const cplx c = f.coeffs()[i];
    if (c == cplx{}) continue;
    const Freq k = f.box().freq(i);
    json row = json::array();
    for (int a = 0; a < f.dim(); ++a) row.push_back(k[a]);
    row.push_back(c.real());
    row.push_back(c.imag());
    rows.push_back(std::move(row));
  }
  return {{"d", f.dim()}, {"N", f.radius()}, {"real", f.real_valued()}, {"rows", std::move(rows)}};
}

TrigPoly trigpoly_from_json(const json& j) {
  const int d = j.at("d").get<int>();
  const int N = j.at("N").get<int>();
  if (d < 1 || d > kMaxDim || N < 0) fail(ErrorKind::io, "bad box in coefficient JSON");
  TrigPoly f(d, N);
  for (const auto& row : j.at("rows")) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d + 2)) fail(ErrorKind::io, "bad coefficient row");
    Freq k{};
    for (int a = 0; a < d; ++a) k[a] = row[static_cast<std::size_t>(a)].get<int>();
    if (!f.box().contains(k)) fail(ErrorKind::io, "coefficient row outside the box");
    f.at(k) = cplx{row[static_cast<std::size_t>(d)].get<double>(), row[static_cast<std::size_t>(d + 1)].get<double>()};
  }
  if (j.value("real", false)) f.set_real_valued(true, 0.0);
  return f;
}

std::string trigpoly_to_csv(const TrigPoly& f) {
  std::string out = "d,N,real\n" + std::to_string(f.dim()) + "," + std::to_string(f.radius()) + "," +
                    (f.real_valued() ? "1" : "0") + "\n";
  for (int a = 1; a <= f.dim(); ++a) out += "k_" + std::to_string(a) + ",";
  out += "re,im\n";
  for (std::size_t i = 0; i < f.box().size(); ++i) {
    const cplx c = f.coeffs()[i];
    if (c == cplx{}) continue;
    const Freq k = f.box().freq(i);
    for (int a = 0; a < f.dim(); ++a) out += std::to_string(k[a]) + ",";
    out += format_double(c.real()) + "," + format_double(c.imag()) + "\n";
  }
  return out;
}

TrigPoly trigpoly_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.size() < 3) fail(ErrorKind::io, "coefficient CSV needs a header, a box line and a column line");
  const auto head = split(lines[1], ',');
  if (head.size() != 3) fail(ErrorKind::io, "box line must read d,N,real");
  const int d = static_cast<int>(parse_double(head[0], "d"));
  const int N = static_cast<int>(parse_double(head[1], "N"));
  if (d < 1 || d > kMaxDim || N < 0) fail(ErrorKind::io, "bad box in coefficient CSV");
  TrigPoly f(d, N);
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    if (cells.size() != static_cast<std::size_t>(d + 2)) fail(ErrorKind::io, "bad coefficient row " + std::to_string(i + 1));
    Freq k{};
    for (int a = 0; a < d; ++a) k[a] = static_cast<int>(parse_double(cells[static_cast<std::size_t>(a)], "frequency"));
    if (!f.box().contains(k)) fail(ErrorKind::io, "coefficient row outside the box");
    f.at(k) = cplx{parse_double(cells[static_cast<std::size_t>(d)], "re"),
                   parse_double(cells[static_cast<std::size_t>(d + 1)], "im")};
  }
  if (trim(head[2]) == "1") f.set_real_valued(true, 0.0);
  return f;
}

TrigPoly load_trigpoly(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    try {
      return trigpoly_from_json(json::parse(body));
    } catch (const json::exception& e) {
      fail(ErrorKind::io, path.string() + ": " + e.what());
    }
  }
  return trigpoly_from_csv(text);
}

std::string modulus_csv(const std::vector<ModulusPoint>& pts, int d) {
  std::string out = "t,value";
  for (int a = 1; a <= d; ++a) out += ",h_" + std::to_string(a);
  for (int a = 1; a <= d; ++a) out += ",alpha_" + std::to_string(a);
  out += "\n";
  for (const auto& p : pts) {
    out += format_double(p.t) + "," + format_double(p.value);
    for (int a = 0; a < d; ++a) out += "," + format_double(p.argmax_h[a]);
    for (int a = 0; a < d; ++a) out += "," + std::to_string(p.argmax_alpha[a]);
    out += "\n";
  }
  return out;
}

json to_json(const std::vector<ModulusPoint>& pts, int d) {
  json out = json::array();
  for (const auto& p : pts) {
    out.push_back({{"t", p.t},
                   {"value", p.value},
                   {"argmax_h", std::vector<double>(p.argmax_h.begin(), p.argmax_h.begin() + d)},
                   {"argmax_alpha", std::vector<int>(p.argmax_alpha.begin(), p.argmax_alpha.begin() + d)}});
  }
  return out;
}

json to_json(const ConstructionReport& rep) {
  json blocks = json::array();
  for (const auto& b : rep.per_block) {
    blocks.push_back({{"k", b.k},
                      {"mode", to_string(b.mode)},
                      {"mu_lo", b.mu_lo},
                      {"mu_hi", b.mu_hi},
                      {"budget", b.budget},
                      {"achieved_cl", b.achieved_cl},
                      {"achieved_clr", b.achieved_clr},
                      {"flatten_ratio", b.flatten_ratio}});
  }
  json ratios = json::array();
  for (std::size_t i = 0; i < rep.modulus_ratios.size(); ++i) {
    ratios.push_back({{"t", rep.modulus_ratios[i].first},
                      {"sup_ratio", rep.modulus_ratios[i].second},
                      {"l2_ratio", rep.lower_ratios[i].second}});
  }
  return {{"seed", rep.seed},
          {"r", rep.r},
          {"l", rep.l},
          {"domination_ok", rep.domination_ok},
          {"domination_margin", rep.domination_margin},
          {"windows_ok", rep.windows_ok},
          {"disjoint_ok", rep.disjoint_ok},
          {"constant_term", rep.constant_term},
          {"omega", to_json(rep.omega)},
          {"sequence", to_json(rep.seq)},
          {"blocks", std::move(blocks)},
          {"ratios", std::move(ratios)},
          {"flatten_constants", rep.flatten_constants}};
}

std::string ratio_csv(const ConstructionReport& rep) {
  std::string out = "t,sup_ratio,l2_ratio\n";
  for (std::size_t i = 0; i < rep.modulus_ratios.size(); ++i) {
    out += format_double(rep.modulus_ratios[i].first) + "," + format_double(rep.modulus_ratios[i].second) + "," +
           format_double(rep.lower_ratios[i].second) + "\n";
  }
  return out;
}

json to_json(const Estimate& e) { return {{"state", to_string(e.state)}, {"value", number_or_null(e.value)}}; }

json to_json(const EmbeddingReport& rep) {
  const auto& q = rep.query;
  json out = {{"query",
               {{"d", q.d}, {"p", q.p}, {"r", q.r}, {"l", q.l}, {"omega", to_json(q.omega)}, {"continuous", q.continuous}}},
              {"theta", rep.theta},
              {"case", to_string(rep.kase)},
              {"verdict", to_string(rep.verdict)},
              {"integral_value", to_json(rep.integral_value)}};
  if (rep.nmax > 0) {
    out["K"] = {{"bruteforce", to_json(rep.k_bruteforce)},
                {"discretized", to_json(rep.k_discretized)},
                {"integral", to_json(rep.k_integral)},
                {"nmax", rep.nmax},
                {"agreement_bracket", number_or_null(rep.agreement_bracket)}};
  }
  return out;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::string out = "Nmax,ap_norm,lip_functional\n";
  for (const auto& r : rows) {
    out += std::to_string(r.nmax) + "," + format_double(r.ap_norm) + "," + format_double(r.lip_functional) + "\n";
  }
  return out;
}

Majorant parse_majorant(std::string_view spec, double r) {
  spec = trim(spec);
  if (spec.starts_with("table:")) return parse_table(std::filesystem::path(std::string(trim(spec.substr(6)))));
  double a = 0.0, b = 0.0;
  bool seen_pow = false, seen_log = false;
  std::string_view rest = spec;
  while (!rest.empty()) {
    const auto open = rest.find('(');
    const auto close = rest.find(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      fail(ErrorKind::parameter, "cannot parse majorant '" + std::string(spec) + "'");
    }
    const auto name = trim(rest.substr(0, open));
    const double v = parse_exponent(rest.substr(open + 1, close - open - 1), r);
    if (name == "pow" && !seen_pow) {
      a = v;
      seen_pow = true;
    } else if (name == "log" && !seen_log) {
      b = v;
      seen_log = true;
    } else {
      fail(ErrorKind::parameter, "unexpected term '" + std::string(name) + "' in majorant '" + std::string(spec) + "'");
    }
    rest = trim(rest.substr(close + 1));
    if (rest.empty()) break;
    if (rest.front() != '*') fail(ErrorKind::parameter, "terms must be joined by '*' in '" + std::string(spec) + "'");
    rest = trim(rest.substr(1));
    if (rest.empty()) fail(ErrorKind::parameter, "dangling '*' in majorant '" + std::string(spec) + "'");
  }
  if (!seen_pow && !seen_log) fail(ErrorKind::parameter, "empty majorant");
  return Majorant::power_log(a, b);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace lipa
