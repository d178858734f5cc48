#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "lowzero/family.hpp"
#include "lowzero/zeros.hpp"

namespace lowzero {

/// Bumped whenever the evaluator changes in a way that could move a stored ordinate.
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderSize = 40;

/// Record layout (little-endian): "LQZ0", u32 version, u64 p, f64 T, u64 count,
/// u8 central_flag, 7 zero bytes, then count f64 ordinates ascending.
std::vector<std::uint8_t> encode_zero_record(const ZeroList& z, std::uint32_t version = kCacheVersion);
/// Throws std::runtime_error on a malformed record.
ZeroList decode_zero_record(std::span<const std::uint8_t> bytes, std::uint32_t* version = nullptr);

struct PopulateStats {
  std::size_t hits = 0;
  std::size_t computed = 0;
  std::vector<std::uint64_t> failures;  // primes whose lists could not be certified
};

/// Directory of records at <root>/v<version>/T<T>/<p>.lqz. Only certified lists are
/// stored; writes go through a temporary file and a rename.
class ZeroCache {
 public:
  explicit ZeroCache(std::filesystem::path root, std::uint32_t version = kCacheVersion);

  std::filesystem::path file_for(std::uint64_t p, double T) const;
  bool contains(std::uint64_t p, double T) const;
  std::optional<ZeroList> load(std::uint64_t p, double T) const;
  void store(const ZeroList& z) const;

  /// Lists for all primes, in order; MissingCacheError names every absent prime.
  std::vector<ZeroList> load_all(std::span<const std::uint64_t> primes, double T) const;

  /// Computes and stores whatever is missing.
  PopulateStats populate(std::span<const std::uint64_t> primes, double T, unsigned threads,
                         const FamilyOptions& opt = {}) const;

  const std::filesystem::path& root() const { return root_; }
  std::uint32_t version() const { return version_; }

 private:
  std::filesystem::path root_;
  std::uint32_t version_;
};

}  // namespace lowzero
