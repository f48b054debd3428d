#include "dirshape/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "dirshape/error.hpp"

namespace dirshape {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  static const std::regex kPiForm(R"(^([+-]?)(\d*\.?\d*)\*?pi(?:/(\d+(?:\.\d*)?))?$)");
  std::smatch m;
  if (std::regex_match(s, m, kPiForm)) {
    double v = kPi;
    if (m[2].length() > 0) v *= std::stod(m[2].str());
    if (m[3].length() > 0) v /= std::stod(m[3].str());
    return m[1].str() == "-" ? -v : v;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse number '" + s + "'");
  }
  return v;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_sig9(v[i]);
  }
  return out;
}

void fail(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

}  // namespace

std::string format_sig9(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  std::uint64_t h = seed;
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<double> uniform_thetas(int n) {
  if (n < 1) fail("theta grid needs at least one sample");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = -kPi / 2 + (k + 1) * kPi / n;
  // snap to exact grid points
  for (auto& t : out) {
    if (std::abs(t) < 1e-12) t = 0.0;
    if (std::abs(t - kPi / 2) < 1e-12) t = kPi / 2;
  }
  return out;
}

MetricConfig MetricConfig::defaults() {
  MetricConfig c;
  c.thetas = uniform_thetas(4);
  c.betas = {1.0, 3.0, 5.0};
  return c;
}

void MetricConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon must be positive");
  if (!(area >= 16.0) || !std::isfinite(area)) fail("area must be at least 16 pixels");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) fail("kappa must be positive");
  if (thetas.empty()) fail("theta grid is empty");
  if (betas.empty()) fail("beta grid is empty");
  for (double t : thetas) {
    if (!(t >= -kPi / 2 - 1e-9 && t <= kPi / 2 + 1e-9)) {
      fail("theta " + format_sig9(t) + " lies outside [-pi/2, pi/2]");
    }
  }
  const double step = kPi / static_cast<double>(thetas.size());
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    if (std::abs((thetas[i] - thetas[i - 1]) - step) > 1e-6) {
      fail("theta grid must be ascending and uniformly spaced by pi/N over one period");
    }
  }
  for (std::size_t j = 0; j < betas.size(); ++j) {
    if (!(betas[j] >= 1.0) || !std::isfinite(betas[j])) fail("beta values must be >= 1");
    if (j > 0 && !(betas[j] > betas[j - 1])) fail("beta grid must be strictly ascending");
  }
}

int MetricConfig::margin() const { return static_cast<int>(std::ceil(epsilon)) + 2; }

int MetricConfig::zero_theta_index() const {
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (std::abs(thetas[i]) < 1e-9) return static_cast<int>(i);
  }
  return -1;
}

std::uint64_t MetricConfig::descriptor_hash() const {
  std::ostringstream os;
  os.precision(17);
  os << "eps=" << epsilon << ";area=" << area << ";thetas=";
  for (double t : thetas) os << t << ',';
  os << ";betas=";
  for (double b : betas) os << b << ',';
  const std::string s = os.str();
  return fnv1a(s.data(), s.size());
}

std::string MetricConfig::summary() const {
  return "epsilon=" + format_sig9(epsilon) + " area=" + format_sig9(area) +
         " kappa=" + format_sig9(kappa) + " thetas=" + join(thetas) + " betas=" + join(betas);
}

bool MetricConfig::same_grid(const MetricConfig& o, double tol) const {
  auto close = [tol](double a, double b) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
  };
  if (!close(epsilon, o.epsilon) || !close(area, o.area)) return false;
  if (thetas.size() != o.thetas.size() || betas.size() != o.betas.size()) return false;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!close(thetas[i], o.thetas[i])) return false;
  }
  for (std::size_t j = 0; j < betas.size(); ++j) {
    if (!close(betas[j], o.betas[j])) return false;
  }
  return true;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_number(item));
  }
  if (out.empty()) fail("empty number list '" + text + "'");
  return out;
}

std::map<std::string, std::string> read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config_keys(const std::map<std::string, std::string>& kv, MetricConfig& config) {
  for (const auto& [key, value] : kv) {
    if (key == "epsilon") {
      config.epsilon = parse_number(value);
    } else if (key == "area") {
      config.area = parse_number(value);
    } else if (key == "kappa") {
      config.kappa = parse_number(value);
    } else if (key == "thetas") {
      config.thetas = parse_number_list(value);
    } else if (key == "betas") {
      config.betas = parse_number_list(value);
    }
  }
}

}  // namespace dirshape
