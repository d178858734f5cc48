#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "lowzero/errors.hpp"
#include "lowzero/numth.hpp"

using namespace lowzero;

TEST_CASE("sieve small classes") {
  CHECK(sieve_primes(20, 1).primes == std::vector<std::uint64_t>{5, 13, 17});
  CHECK(sieve_primes(20, 3).primes == std::vector<std::uint64_t>{3, 7, 11, 19});
  CHECK(sieve_primes(2, 1).primes.empty());
  CHECK_THROWS_AS(sieve_primes(20, 2), DomainError);
}

TEST_CASE("sieve matches trial division and is segment independent") {
  auto naive = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (int v : {1, 3}) {
    auto a = sieve_primes(30000, v, 1000);
    auto b = sieve_primes(30000, v);
    CHECK(a.primes == b.primes);
    std::vector<std::uint64_t> ref;
    for (std::uint64_t n = 3; n <= 30000; ++n)
      if (n % 4 == static_cast<std::uint64_t>(v) && naive(n)) ref.push_back(n);
    CHECK(a.primes == ref);
  }
  // pi(10^6; 4, 1) = 39175, pi(10^6; 4, 3) = 39322
  CHECK(sieve_primes(1000000, 1).count() == 39175);
  CHECK(sieve_primes(1000000, 3).count() == 39322);
}

TEST_CASE("legendre values and errors") {
  CHECK(legendre(2, 7) == 1);
  CHECK(legendre(3, 5) == -1);
  CHECK(legendre(14, 7) == 0);
  CHECK(legendre(-1, 7) == -1);
  CHECK(legendre(-1, 13) == 1);
  CHECK_THROWS_AS(legendre(3, 2), DomainError);
  CHECK_THROWS_AS(legendre(3, 8), DomainError);
}

TEST_CASE("legendre agrees with Euler criterion and is multiplicative") {
  for (auto p : primes_up_to(200)) {
    if (p == 2) continue;
    for (std::int64_t n = -50; n <= static_cast<std::int64_t>(p * p); ++n)
      REQUIRE(legendre(n, p) == legendre_euler(n, p));
    for (std::int64_t m = 1; m <= static_cast<std::int64_t>(p * p); m += 37)
      for (std::int64_t n = 1; n <= static_cast<std::int64_t>(p * p); n += 53)
        REQUIRE(legendre(m * n, p) == legendre(m, p) * legendre(n, p));
    for (std::int64_t m = 1; m < 60; ++m)
      if (m % static_cast<std::int64_t>(p) != 0) REQUIRE(legendre(m * m, p) == 1);
  }
}

TEST_CASE("von Mangoldt") {
  CHECK(von_mangoldt(8) == doctest::Approx(std::log(2.0)));
  CHECK(von_mangoldt(12) == 0.0);
  CHECK(von_mangoldt(1) == 0.0);
  CHECK(von_mangoldt(97) == doctest::Approx(std::log(97.0)));
  for (std::uint64_t m = 2; m < 500; ++m) CHECK(von_mangoldt(m * m) == von_mangoldt(m));
  auto w = arith_weight(49);
  CHECK(w.is_square);
  CHECK(w.lambda_n == doctest::Approx(std::log(7.0)));
}

TEST_CASE("logarithmic integral") {
  CHECK(li(2.0) == 0.0);
  // mpmath quad, 40 digits
  CHECK(std::abs(li(10.0) - 5.120435724669805152678) < 1e-10);
  CHECK(std::abs(li(1e6) - 78626.50399568206442708) < 1e-8);
  CHECK_THROWS_AS(li(1.5), DomainError);
  const double total = static_cast<double>(sieve_primes(1000000, 1).count() + sieve_primes(1000000, 3).count());
  CHECK(std::abs(li(1e6) - total) < 200.0);
}

TEST_CASE("character sums over primes") {
  CHECK(char_sum_over_primes(4, 20, 3) == 4);
  CHECK(char_sum_over_primes(1, 20, 1) == 3);
  CHECK(char_sum_over_primes(9, 20, 3) == 3);
  CHECK(lambda_weighted_sum(12, 1000, 1) == 0.0);
  CHECK(lambda_weighted_sum(9, 20, 3) == doctest::Approx(3.0 * std::log(3.0)));
  CHECK(lambda_weighted_sum(2, 100, 1) ==
        doctest::Approx(std::log(2.0) * static_cast<double>(char_sum_over_primes(2, 100, 1))));
  const double X = 1e4;
  CHECK(std::abs(static_cast<double>(char_sum_over_primes(2, 10000, 1))) <= 3.0 * std::sqrt(X) * std::log(X));
}

TEST_CASE("batched and range character sums agree with direct sums") {
  auto ps = sieve_primes(5000, 3);
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n <= 300; ++n) ns.push_back(n);
  auto batched = char_sums_over_primes(ns, ps, 2);
  auto ranged = char_sums_range(300, ps, 2);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto direct = char_sum_over_primes(ns[i], ps);
    REQUIRE(batched[i] == direct);
    REQUIRE(ranged[ns[i]] == direct);
  }
  // square n: pi(X;4,v) minus listed primes dividing n
  CHECK(ranged[9] == static_cast<std::int64_t>(ps.count()) - 1);
  CHECK(ranged[4] == static_cast<std::int64_t>(ps.count()));
}

TEST_CASE("empirical GRH-shaped bound and count consistency") {
  for (std::uint64_t X : {1000ull, 10000ull, 100000ull}) {
    for (int v : {1, 3}) {
      auto ps = sieve_primes(X, v);
      auto S = char_sums_range(10000, ps);
      double worst = 0;
      for (std::uint64_t n = 2; n <= 10000; ++n)
        if (!is_perfect_square(n)) worst = std::max(worst, std::abs(static_cast<double>(S[n])));
      const double c = worst / (std::sqrt(static_cast<double>(X)) * std::log(static_cast<double>(X)));
      CHECK(c <= 3.0);
      const double gap = std::abs(static_cast<double>(ps.count()) - 0.5 * li(static_cast<double>(X)));
      CHECK(gap <= 2.0 * std::sqrt(static_cast<double>(X)) * std::log(static_cast<double>(X)));
    }
  }
}
