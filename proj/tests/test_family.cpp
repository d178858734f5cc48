#include <cmath>

#include "doctest.h"
#include "lowzero/family.hpp"
#include "lowzero/numth.hpp"

using namespace lowzero;

TEST_CASE("tabulated Z matches direct evaluation") {
  const FamilyEvaluator ev(0, 20000, 8.0);
  for (auto p : {5ull, 101ull, 7933ull, 19997ull}) {
    const QuadChar chi(p);
    const auto z = ev.z_values(chi);
    const auto& t = ev.z_nodes();
    for (std::size_t j = 0; j < t.size(); j += 7) CHECK(std::abs(z[j] - hardy_Z(chi, t[j])) < 1e-11);
    const auto top = ev.segment_values(chi, true);
    const auto& sg = ev.segment_nodes();
    for (std::size_t k = 0; k < sg.size(); k += 5)
      CHECK(std::abs(top[k] - eval_L(chi, cplx(sg[k], 8.0))) < 1e-11 * std::max(1.0, std::abs(top[k])));
  }
}

TEST_CASE("bulk zeros agree with the generic finder") {
  for (int v : {1, 3}) {
    auto primes = sieve_primes(3000, v).primes;
    const FamilyEvaluator ev(v == 1 ? 0 : 1, primes.back(), 8.0);
    for (std::size_t i = 0; i < primes.size(); i += 23) {
      const QuadChar chi(primes[i]);
      const auto bulk = ev.zeros(chi);
      const auto ref = find_zeros(chi, 8.0);
      REQUIRE(bulk.certified);
      REQUIRE(ref.certified);
      REQUIRE(bulk.gammas.size() == ref.gammas.size());
      for (std::size_t k = 0; k < ref.gammas.size(); ++k) CHECK(std::abs(bulk.gammas[k] - ref.gammas[k]) < 1e-9);
      CHECK(bulk.central_flag == ref.central_flag);
    }
    CHECK(ev.bulk_certified() > ev.fallbacks());
  }
}

TEST_CASE("family driver handles mixed parities") {
  std::vector<std::uint64_t> ps = primes_up_to(400);
  ps.erase(ps.begin());  // drop 2
  auto lists = find_zeros_family(ps, 8.0, 2);
  REQUIRE(lists.size() == ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(lists[i].p == ps[i]);
    CHECK(lists[i].certified);
  }
}
