#include <cstring>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lowzero/errors.hpp"
#include "lowzero/zero_cache.hpp"

using namespace lowzero;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const char* name) {
  auto d = fs::temp_directory_path() / ("lowzero_cache_test_" + std::string(name));
  fs::remove_all(d);
  return d;
}
}  // namespace

TEST_CASE("record layout is byte exact") {
  ZeroList z;
  z.p = 13;
  z.T = 8.0;
  z.gammas = {1.5, 2.25};
  z.central_flag = true;
  z.certified = true;
  const auto b = encode_zero_record(z);
  REQUIRE(b.size() == 40 + 16);
  CHECK(std::memcmp(b.data(), "LQZ0", 4) == 0);
  CHECK(b[4] == kCacheVersion);
  CHECK(b[8] == 13);
  CHECK(b[24] == 2);
  CHECK(b[32] == 1);
  for (int i = 33; i < 40; ++i) CHECK(b[i] == 0);
  double g;
  std::memcpy(&g, b.data() + 48, 8);
  CHECK(g == 2.25);
  const auto back = decode_zero_record(b);
  CHECK(back.gammas == z.gammas);
  CHECK(encode_zero_record(back) == b);
  auto bad = b;
  bad[0] = 'X';
  CHECK_THROWS(decode_zero_record(bad));
  bad = b;
  bad.pop_back();
  CHECK_THROWS(decode_zero_record(bad));
}

TEST_CASE("round trip through the cache directory") {
  const auto dir = scratch("roundtrip");
  ZeroCache cache(dir);
  auto z = find_zeros(QuadChar(101), 8.0);
  REQUIRE(z.certified);
  cache.store(z);
  CHECK(cache.file_for(101, 8.0) == dir / "v1" / "T8" / "101.lqz");
  auto back = cache.load(101, 8.0);
  REQUIRE(back);
  CHECK(back->gammas == z.gammas);
  CHECK(back->central_flag == z.central_flag);
  CHECK(!ZeroCache(dir, 2).load(101, 8.0));
  CHECK(!cache.load(101, 7.0));
  ZeroList raw;
  raw.p = 7;
  CHECK_THROWS_AS(cache.store(raw), UncertifiedZerosError);
  fs::remove_all(dir);
}

TEST_CASE("populate is idempotent and missing primes are listed") {
  const auto dir = scratch("populate");
  ZeroCache cache(dir);
  std::vector<std::uint64_t> ps = {5, 13, 17, 29, 37, 41};
  CHECK_THROWS_AS(cache.load_all(ps, 8.0), MissingCacheError);
  try {
    cache.load_all(ps, 8.0);
  } catch (const MissingCacheError& e) {
    CHECK(e.missing() == ps);
  }
  auto st = cache.populate(ps, 8.0, 1);
  CHECK(st.computed == ps.size());
  CHECK(st.failures.empty());
  auto again = cache.populate(ps, 8.0, 1);
  CHECK(again.hits == ps.size());
  CHECK(again.computed == 0);
  CHECK(cache.load_all(ps, 8.0).size() == ps.size());
  fs::remove_all(dir);
}
