#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lowzero {

inline constexpr std::size_t kDefaultSegment = std::size_t{1} << 20;

struct PrimeSet {
  std::uint64_t limit = 0;
  int v = 1;
  std::vector<std::uint64_t> primes;

  std::size_t count() const noexcept { return primes.size(); }
};

struct ArithWeight {
  std::uint64_t n = 1;
  double lambda_n = 0.0;
  bool is_square = false;
};

/// All primes p <= X with p = v (mod 4), via a segmented sieve of Eratosthenes.
PrimeSet sieve_primes(std::uint64_t X, int v, std::size_t segment = kDefaultSegment);

/// Every prime <= X (no class filter); used for Euler products and prime-power tests.
std::vector<std::uint64_t> primes_up_to(std::uint64_t X, std::size_t segment = kDefaultSegment);

/// Jacobi symbol (n|m) for odd m >= 1, by the reciprocity ladder.
int jacobi(std::int64_t n, std::uint64_t m);

/// Legendre symbol (n|p) for an odd prime p >= 3.
int legendre(std::int64_t n, std::uint64_t p);

/// Euler criterion n^((p-1)/2) mod p mapped to {-1,0,1}. Slow reference for tests.
int legendre_euler(std::int64_t n, std::uint64_t p);

bool is_perfect_square(std::uint64_t n);

/// log q when n = q^k for a prime q, else 0.
double von_mangoldt(std::uint64_t n);

ArithWeight arith_weight(std::uint64_t n);

/// Logarithmic integral Li(X) = int_2^X du / log u, absolute error < 1e-10.
double li(double X);

/// S(n) = sum over p <= X, p = v (mod 4) of (n|p).
std::int64_t char_sum_over_primes(std::uint64_t n, std::uint64_t X, int v);

/// Same sum over a precomputed prime set.
std::int64_t char_sum_over_primes(std::uint64_t n, const PrimeSet& primes);

/// Batched S(n) for many n: the prime loop runs once and per-n partial sums are
/// reduced across prime blocks.
std::vector<std::int64_t> char_sums_over_primes(std::span<const std::uint64_t> ns,
                                                const PrimeSet& primes, unsigned threads = 1);

/// S(n) for every n in [1, N]. Each prime fills a completely multiplicative table
/// from its values on the primes <= N, so the cost per prime is O(N).
std::vector<std::int64_t> char_sums_range(std::uint64_t N, const PrimeSet& primes,
                                          unsigned threads = 1);

double lambda_weighted_sum(std::uint64_t n, std::uint64_t X, int v);

/// Fill chi[0..N] with (n|p) using multiplicativity from the prime values.
void legendre_table(std::uint64_t p, std::span<std::int8_t> chi,
                    std::span<const std::uint32_t> smallest_factor);

/// Smallest prime factor for every n in [0, N] (0 and 1 map to 0 and 1).
std::vector<std::uint32_t> smallest_factor_table(std::uint64_t N);

}  // namespace lowzero
