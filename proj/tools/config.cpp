#include "config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "lowzero/kernel.hpp"
#include "lowzero/testfn.hpp"

namespace lowzero::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError("invalid value '" + text + "' for " + key);
  return value;
}

double parse_double(const std::string& key, const std::string& text) {
  const auto t = trim(text);
  try {
    std::size_t used = 0;
    const double d = std::stod(t, &used);
    if (used != t.size() || !std::isfinite(d)) throw ConfigError("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("invalid value '" + text + "' for " + key);
  }
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  // Accept 1e5 style as well as plain integers.
  const auto t = trim(text);
  if (t.find_first_of("eE.") != std::string::npos) {
    const double d = parse_double(key, t);
    if (d < 0 || d != std::floor(d) || d > 1e15) throw ConfigError("invalid value '" + text + "' for " + key);
    return static_cast<std::uint64_t>(d);
  }
  return parse_number<std::uint64_t>(key, t);
}

std::string canonical_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "X", "v", "kernel", "tf", "lambda", "T", "cache-dir", "out-dir", "threads", "alpha-grid",
      "root-tol", "tol-zero-scale", "ratio-r", "cache-version", "primes"};
  return keys;
}

void RunConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = canonical_key(raw_key);
  if (key == "X")
    X = parse_count(key, value);
  else if (key == "v")
    v = parse_number<int>(key, value);
  else if (key == "kernel")
    kernel = trim(value);
  else if (key == "tf")
    tf = trim(value);
  else if (key == "lambda")
    lambda = parse_double(key, value);
  else if (key == "T")
    T = parse_double(key, value);
  else if (key == "cache-dir")
    cache_dir = trim(value);
  else if (key == "out-dir")
    out_dir = trim(value);
  else if (key == "threads")
    threads = parse_number<unsigned>(key, value);
  else if (key == "alpha-grid")
    alpha_grid = trim(value);
  else if (key == "root-tol")
    root_tol = parse_double(key, value);
  else if (key == "tol-zero-scale")
    tol_zero_scale = parse_double(key, value);
  else if (key == "ratio-r")
    ratio_r = parse_double(key, value);
  else if (key == "cache-version")
    cache_version = parse_number<std::uint32_t>(key, value);
  else if (key == "primes")
    primes = trim(value);
  else
    throw ConfigError("unknown config key '" + raw_key + "'");
}

void RunConfig::validate() const {
  if (v != 1 && v != 3) throw ConfigError("v must be 1 or 3");
  if (X < 2) throw ConfigError("X must be at least 2");
  if (!(T > 0.0)) throw ConfigError("T must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (!(root_tol > 0.0 && root_tol < 1e-3)) throw ConfigError("root-tol must lie in (0, 1e-3)");
  if (!(tol_zero_scale > 0.0)) throw ConfigError("tol-zero-scale must be positive");
  if (!(ratio_r > 0.0 && ratio_r < 0.25)) throw ConfigError("ratio-r must lie in (0, 1/4)");
  if (cache_version == 0) throw ConfigError("cache-version must be positive");
  if (cache_dir.empty() || out_dir.empty()) throw ConfigError("cache-dir and out-dir must be set");
  try {
    kernel_by_name(kernel);
    for (const auto& name : test_functions()) tf_by_name(name, lambda);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  if (test_functions().empty()) throw ConfigError("tf must name at least one test function");
  alphas();
  prime_subset();
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("alpha-grid range must look like start:stop:step");
    const double a = parse_double("alpha-grid", parts[0]);
    const double b = parse_double("alpha-grid", parts[1]);
    const double h = parse_double("alpha-grid", parts[2]);
    if (!(h > 0.0) || b < a) throw ConfigError("alpha-grid needs start <= stop and step > 0");
    const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    if (n > 100000) throw ConfigError("alpha-grid has too many points");
    for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * h);
  } else {
    for (const auto& item : split(spec, ',')) out.push_back(parse_double("alpha-grid", item));
  }
  if (out.empty()) throw ConfigError("alpha-grid is empty");
  return out;
}

std::vector<double> RunConfig::alphas() const { return parse_grid(alpha_grid); }

std::vector<std::string> RunConfig::test_functions() const { return split(tf, ','); }

std::vector<std::uint64_t> RunConfig::prime_subset() const {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(primes, ',')) {
    const auto p = parse_count("primes", item);
    if (p < 3 || p % 2 == 0) throw ConfigError("primes must be odd primes");
    out.push_back(p);
  }
  return out;
}

unsigned RunConfig::worker_threads() const {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["X"] = X;
  j["v"] = v;
  j["kernel"] = kernel;
  j["tf"] = tf;
  j["lambda"] = lambda;
  j["T"] = T;
  j["cache_dir"] = cache_dir;
  j["out_dir"] = out_dir;
  j["threads"] = threads;
  j["alpha_grid"] = alpha_grid;
  j["root_tol"] = root_tol;
  j["tol_zero_scale"] = tol_zero_scale;
  j["ratio_r"] = ratio_r;
  j["cache_version"] = cache_version;
  j["primes"] = primes;
  return j;
}

std::string RunConfig::hash() const {
  const std::string text = to_json().dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = canonical_key(trim(line.substr(0, eq)));
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig resolve_config(const std::map<std::string, std::string>& file,
                         const std::map<std::string, std::string>& flags) {
  RunConfig cfg;
  for (const auto& [k, val] : file) cfg.set(k, val);
  for (const auto& [k, val] : flags) cfg.set(k, val);
  cfg.validate();
  return cfg;
}

}  // namespace lowzero::app
