#include "lipa/majorant.hpp"

#include <cmath>
#include <sstream>

#include "lipa/error.hpp"

namespace lipa {

namespace {

constexpr double kMonotoneSlack = 1e-12;

}  // namespace

Majorant Majorant::power_log(double a, double b, double scale) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(scale > 0.0) || !std::isfinite(scale)) {
    fail(ErrorKind::parameter, "power-log majorant needs finite a, b and scale > 0");
  }
  return Majorant(PowerLog{a, b, scale});
}

Majorant Majorant::tabulated(std::vector<double> values) {
  if (values.empty()) fail(ErrorKind::parameter, "tabulated majorant needs at least one value");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::parameter, "tabulated majorant values must be positive and finite");
    }
  }
  return Majorant(Tabulated{std::move(values)});
}

void Majorant::check_index(std::int64_t n) const {
  if (n < 1) fail(ErrorKind::domain, "majorant index must be >= 1");
  if (const auto* tab = as_tabulated(); tab && n > static_cast<std::int64_t>(tab->values.size())) {
    fail(ErrorKind::domain, "index " + std::to_string(n) + " past the end of the table (" +
                                std::to_string(tab->values.size()) + ")");
  }
}

double Majorant::operator()(double t) const {
  if (!(t > 0.0 && t <= 1.0)) fail(ErrorKind::domain, "majorant argument must lie in (0,1]");
  if (const auto* pl = as_power_log()) {
    return pl->scale * std::pow(t, pl->a) * std::pow(std::log(2.0 / t), pl->b);
  }
  const auto n = static_cast<std::int64_t>(std::llround(1.0 / t));
  return at(n);
}

double Majorant::at(std::int64_t n) const {
  check_index(n);
  if (const auto* pl = as_power_log()) {
    const double x = static_cast<double>(n);
    return pl->scale * std::pow(x, -pl->a) * std::pow(std::log(2.0 * x), pl->b);
  }
  return as_tabulated()->values[static_cast<std::size_t>(n - 1)];
}

double Majorant::scaled_at(std::int64_t n, double r) const {
  check_index(n);
  const double x = static_cast<double>(n);
  if (const auto* pl = as_power_log()) {
    return pl->scale * std::pow(x, r - pl->a) * std::pow(std::log(2.0 * x), pl->b);
  }
  return std::pow(x, r) * as_tabulated()->values[static_cast<std::size_t>(n - 1)];
}

std::optional<std::int64_t> Majorant::table_size() const {
  if (const auto* tab = as_tabulated()) return static_cast<std::int64_t>(tab->values.size());
  return std::nullopt;
}

Majorant Majorant::scaled(double c) const {
  if (!(c > 0.0)) fail(ErrorKind::parameter, "majorant scale factor must be positive");
  if (const auto* pl = as_power_log()) return power_log(pl->a, pl->b, pl->scale * c);
  auto values = as_tabulated()->values;
  for (double& v : values) v *= c;
  return tabulated(std::move(values));
}

Majorant Majorant::tabulate(std::int64_t n) const {
  std::vector<double> values(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) values[static_cast<std::size_t>(i - 1)] = at(i);
  return tabulated(std::move(values));
}

std::string Majorant::describe() const {
  std::ostringstream os;
  if (const auto* pl = as_power_log()) {
    os << "power-log(a=" << pl->a << ", b=" << pl->b;
    if (pl->scale != 1.0) os << ", scale=" << pl->scale;
    os << ")";
  } else {
    os << "tabulated(" << as_tabulated()->values.size() << " values)";
  }
  return os.str();
}

QuasiconcavityReport validate_quasiconcave(const Majorant& omega, double r, std::int64_t nmax) {
  if (nmax < 2) fail(ErrorKind::parameter, "validate_quasiconcave needs nmax >= 2");
  if (!(r > 0.0)) fail(ErrorKind::parameter, "order r must be positive");
  QuasiconcavityReport report;
  double prev = omega.at(1);
  double prev_scaled = omega.scaled_at(1, r);
  for (std::int64_t n = 2; n <= nmax; ++n) {
    const double cur = omega.at(n);
    const double cur_scaled = omega.scaled_at(n, r);
    if (cur > prev * (1.0 + kMonotoneSlack)) {
      return {false, n, "omega_n must be non-increasing"};
    }
    if (cur_scaled < prev_scaled * (1.0 - kMonotoneSlack)) {
      return {false, n, "n^r omega_n must be non-decreasing"};
    }
    prev = cur;
    prev_scaled = cur_scaled;
  }
  return report;
}

bool power_log_is_quasiconcave(const PowerLog& m, double r) {
  // Signs of d/dt log omega and d/dt log(t^r/omega) are those of a*L - b and
  // (r-a)*L + b with L = log(2/t) ranging over [log 2, inf).
  const double l0 = std::log(2.0);
  const bool increasing = m.a > 0.0 ? m.a * l0 >= m.b : (m.a == 0.0 && m.b <= 0.0);
  const double ra = r - m.a;
  const bool ratio_increasing = ra > 0.0 ? ra * l0 + m.b >= 0.0 : (ra == 0.0 && m.b >= 0.0);
  return increasing && ratio_increasing;
}

const char* to_string(BlockLabel label) { return label == BlockLabel::I ? "I" : "J"; }

std::size_t DiscretizingSequence::block_of(std::int64_t n) const {
  if (n > nmax || mu.empty()) return mu.size();
  std::size_t k = 0;
  while (k + 1 < mu.size() && mu[k + 1] <= n) ++k;
  return k;
}

double default_lambda(double r) { return std::max(5.0, std::pow(4.0, r) + 1.0); }

}  // namespace lipa
