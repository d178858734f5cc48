#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lowzero/zero_cache.hpp"

namespace lowzero::app {

/// Bad flag value or config entry; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t X = 10000;
  int v = 1;
  std::string kernel = "gauss";
  std::string tf = "fejer";  // comma-separated list of registry names
  double lambda = 0.9;
  double T = 8.0;
  std::string cache_dir = "lowzero-cache";
  std::string out_dir = "lowzero-out";
  unsigned threads = 0;  // 0: one per hardware thread
  std::string alpha_grid = "0:2:0.02";
  double root_tol = 1e-10;
  double tol_zero_scale = 1.0;
  double ratio_r = 0.15;
  std::uint32_t cache_version = kCacheVersion;
  std::string primes;  // optional comma-separated subset for `zeros`

  /// Sets one field from its textual form. Keys use the flag spelling ("cache-dir");
  /// underscores are accepted too.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  std::vector<double> alphas() const;
  std::vector<std::string> test_functions() const;
  std::vector<std::uint64_t> prime_subset() const;
  unsigned worker_threads() const;

  nlohmann::json to_json() const;
  /// SHA-256 of the canonical JSON form, hex encoded.
  std::string hash() const;
};

/// Every key accepted by RunConfig::set, in canonical spelling.
const std::vector<std::string>& config_keys();

/// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Defaults, then the file, then explicit flags.
RunConfig resolve_config(const std::map<std::string, std::string>& file,
                         const std::map<std::string, std::string>& flags);

/// "a:b:step" or "a1,a2,...".
std::vector<double> parse_grid(const std::string& spec);

}  // namespace lowzero::app
