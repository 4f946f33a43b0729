#include "thinlaw/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "thinlaw/errors.hpp"
#include "thinlaw/numeric.hpp"

namespace thinlaw {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::size_t to_count(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError("not a nonnegative integer: '" + std::string(s) + "'");
  }
  return v;
}

void expect_args(std::string_view name, const std::vector<std::string_view>& args,
                 std::size_t n) {
  if (args.size() != n) {
    throw ParameterError("family '" + std::string(name) + "' takes " + std::to_string(n) +
                         " parameter(s)");
  }
}

}  // namespace

nlohmann::json to_json(const Pmf& p) {
  return {{"probs", std::vector<double>(p.probs().begin(), p.probs().end())},
          {"tail", p.tail()}};
}

Pmf pmf_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("probs") || !j["probs"].is_array()) {
    throw ParameterError("PMF JSON needs a \"probs\" array");
  }
  auto probs = j["probs"].get<std::vector<double>>();
  const double tail = j.value("tail", 0.0);
  if (probs.empty()) throw ParameterError("PMF JSON has no masses");
  for (double v : probs) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("PMF JSON has a negative mass");
  }
  if (!(tail >= 0.0)) throw ParameterError("PMF JSON has a negative tail");
  const double total = compensated_sum(probs) + tail;
  if (std::abs(total - 1.0) > kFileMassTolerance) {
    throw ParameterError("PMF JSON masses sum to " + format_number(total));
  }
  for (double& v : probs) v /= total;
  return Pmf(std::move(probs), tail / total);
}

Pmf read_pmf_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(path.string() + ": " + e.what());
  }
  return pmf_from_json(j);
}

void write_pmf_file(const std::filesystem::path& path, const Pmf& p) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << to_json(p).dump() << '\n';
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json comps = nlohmann::json::object();
  for (const auto& [k, v] : r.components) comps[k] = v;
  nlohmann::json j{{"components", comps}, {"applicable", r.applicable}, {"reason", r.reason}};
  j["value"] = std::isfinite(r.value) ? nlohmann::json(r.value) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ClassCertificate& c) {
  nlohmann::json j{{"class", to_string(c.class_name)},
                   {"holds", c.holds},
                   {"ratio", c.ratio},
                   {"kmax_checked", c.kmax_checked},
                   {"complete", c.complete},
                   {"note", c.note}};
  if (c.witness) {
    j["witness"] = {{"index", c.witness->index},
                    {"lhs", c.witness->lhs},
                    {"rhs", c.witness->rhs}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const CharlierCoeffs& c) {
  return {{"lambda", c.lambda}, {"coeffs", c.coeffs}};
}

CharlierCoeffs charlier_coeffs_from_json(const nlohmann::json& j) {
  CharlierCoeffs c;
  c.lambda = j.at("lambda").get<double>();
  c.coeffs = j.at("coeffs").get<std::vector<double>>();
  if (c.coeffs.empty()) throw ParameterError("Charlier JSON has no coefficients");
  c.kmax = c.coeffs.size() - 1;
  return c;
}

FamilySpec parse_family(std::string_view text) {
  const auto colon = text.find(':');
  const auto name = text.substr(0, colon);
  const auto args = colon == std::string_view::npos
                        ? std::vector<std::string_view>{}
                        : split(text.substr(colon + 1), ',');
  FamilySpec spec;
  if (name == "poisson") {
    expect_args(name, args, 1);
    spec = family::Poisson{to_double(args[0])};
  } else if (name == "bernoulli") {
    expect_args(name, args, 1);
    spec = family::Bernoulli{to_double(args[0])};
  } else if (name == "binomial") {
    expect_args(name, args, 2);
    spec = family::Binomial{to_count(args[0]), to_double(args[1])};
  } else if (name == "geometric") {
    expect_args(name, args, 1);
    spec = family::Geometric{to_double(args[0])};
  } else if (name == "negbin") {
    expect_args(name, args, 2);
    spec = family::NegativeBinomial{to_double(args[0]), to_double(args[1])};
  } else if (name == "point") {
    expect_args(name, args, 1);
    spec = family::PointMass{to_count(args[0])};
  } else if (name == "uniform") {
    expect_args(name, args, 2);
    const auto a = to_count(args[0]);
    const auto b = to_count(args[1]);
    if (b < a) throw ParameterError("uniform:a,b needs a <= b");
    if (b >= kMaxSupport) throw ResourceError("uniform support exceeds the limit");
    std::vector<double> probs(b + 1, 0.0);
    for (auto x = a; x <= b; ++x) probs[x] = 1.0 / static_cast<double>(b - a + 1);
    spec = family::Empirical{Pmf(std::move(probs))};
  } else {
    throw ParameterError("unknown family '" + std::string(name) + "'");
  }
  validate(spec);
  return spec;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.starts_with("log:")) {
    const auto parts = split(text.substr(4), ':');
    if (parts.size() != 3) throw ParameterError("log grid is log:a:b:k");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const auto k = to_count(parts[2]);
    if (!(a > 0.0 && b > 0.0) || k < 1) throw ParameterError("log grid needs a, b > 0, k >= 1");
    if (k == 1) return {a};
    const double la = std::log(a);
    const double lb = std::log(b);
    for (std::size_t i = 0; i < k; ++i) {
      out.push_back(std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(k - 1)));
    }
    out.front() = a;
    out.back() = b;
    return out;
  }
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw ParameterError("range grid is a:b[:step]");
    const double a = to_double(parts[0]);
    const double b = to_double(parts[1]);
    const double step = parts.size() == 3 ? to_double(parts[2]) : 1.0;
    if (!(step > 0.0) || b < a) throw ParameterError("range grid needs a <= b and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > kMaxSupport) throw ResourceError("grid has too many points");
    for (std::size_t i = 0; i < count; ++i) out.push_back(a + step * static_cast<double>(i));
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(to_double(part));
  if (out.empty()) throw ParameterError("empty grid");
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace thinlaw
