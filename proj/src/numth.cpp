#include "lowzero/numth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <numeric>

#include "lowzero/errors.hpp"
#include "lowzero/parallel.hpp"
#include "lowzero/quadrature.hpp"

namespace lowzero {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> simple_sieve(std::uint32_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

// Calls emit(p) for each prime p <= X in ascending order.
template <class Emit>
void segmented_sieve(std::uint64_t X, std::size_t segment, Emit&& emit) {
  if (X < 2) return;
  if (segment < 64) segment = 64;
  const auto base = simple_sieve(static_cast<std::uint32_t>(isqrt(X)));
  std::vector<std::uint8_t> mark(segment);
  for (std::uint64_t lo = 2; lo <= X; lo += segment) {
    const std::uint64_t hi = std::min<std::uint64_t>(X, lo + segment - 1);
    std::fill(mark.begin(), mark.end(), 1);
    for (std::uint32_t q : base) {
      const std::uint64_t qq = std::uint64_t{q} * q;
      if (qq > hi) break;
      std::uint64_t start = std::max(qq, (lo + q - 1) / q * q);
      for (std::uint64_t j = start; j <= hi; j += q) mark[j - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (mark[n - lo]) emit(n);
  }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

PrimeSet sieve_primes(std::uint64_t X, int v, std::size_t segment) {
  if (v != 1 && v != 3) throw DomainError("residue class v must be 1 or 3");
  PrimeSet out;
  out.limit = X;
  out.v = v;
  segmented_sieve(X, segment, [&](std::uint64_t p) {
    if (p % 4 == static_cast<std::uint64_t>(v)) out.primes.push_back(p);
  });
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t X, std::size_t segment) {
  std::vector<std::uint64_t> out;
  segmented_sieve(X, segment, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

int jacobi(std::int64_t n, std::uint64_t m) {
  if (m == 0 || m % 2 == 0) throw DomainError("jacobi: modulus must be odd and positive");
  std::uint64_t a;
  if (n >= 0) {
    a = static_cast<std::uint64_t>(n) % m;
  } else {
    std::uint64_t r = static_cast<std::uint64_t>(-(n + 1)) % m;  // avoids overflow at INT64_MIN
    a = m - 1 - r;
  }
  int result = 1;
  while (a != 0) {
    int tz = std::countr_zero(a);
    a >>= tz;
    if ((tz & 1) && (m % 8 == 3 || m % 8 == 5)) result = -result;
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    std::swap(a, m);
    a %= m;
  }
  return m == 1 ? result : 0;
}

int legendre(std::int64_t n, std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw DomainError("legendre: p must be an odd prime");
  return jacobi(n, p);
}

int legendre_euler(std::int64_t n, std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw DomainError("legendre: p must be an odd prime");
  std::int64_t r = n % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  std::uint64_t base = static_cast<std::uint64_t>(r), e = (p - 1) / 2, acc = 1;
  while (e) {
    if (e & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  if (acc == 0) return 0;
  return acc == 1 ? 1 : -1;
}

bool is_perfect_square(std::uint64_t n) {
  std::uint64_t r = isqrt(n);
  return r * r == n;
}

double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  std::uint64_t q = 0;
  if (n % 2 == 0) {
    q = 2;
  } else {
    for (std::uint64_t d = 3; d * d <= n; d += 2)
      if (n % d == 0) {
        q = d;
        break;
      }
    if (q == 0) return std::log(static_cast<double>(n));
  }
  while (n % q == 0) n /= q;
  return n == 1 ? std::log(static_cast<double>(q)) : 0.0;
}

ArithWeight arith_weight(std::uint64_t n) {
  if (n == 0) throw DomainError("arith_weight: n must be positive");
  return {n, von_mangoldt(n), is_perfect_square(n)};
}

double li(double X) {
  if (!(X >= 2.0)) throw DomainError("li: X must be >= 2");
  if (X == 2.0) return 0.0;
  // u = e^v turns the integrand into e^v / v; the shoulder sits at u = e (v = 1).
  auto f = [](double v) { return std::exp(v) / v; };
  const double a = std::log(2.0), b = std::log(X);
  std::vector<double> br{a};
  if (b > 1.0) br.push_back(1.0);
  for (double s = 2.0; s < b; s += 2.0) br.push_back(s);
  br.push_back(b);
  quad::Options opt{1e-12, 1e-15, 4000};
  return quad::integrate_pieces(f, br, opt);
}

std::int64_t char_sum_over_primes(std::uint64_t n, const PrimeSet& primes) {
  std::int64_t s = 0;
  const auto nn = static_cast<std::int64_t>(n);
  for (auto p : primes.primes) s += jacobi(nn, p);
  return s;
}

std::int64_t char_sum_over_primes(std::uint64_t n, std::uint64_t X, int v) {
  if (n == 0) throw DomainError("char_sum_over_primes: n must be positive");
  return char_sum_over_primes(n, sieve_primes(X, v));
}

std::vector<std::int64_t> char_sums_over_primes(std::span<const std::uint64_t> ns,
                                                const PrimeSet& primes, unsigned threads) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t nblocks = (primes.primes.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<std::int64_t>> partial(nblocks, std::vector<std::int64_t>(ns.size(), 0));
  parallel_for(nblocks, threads, [&](std::size_t b) {
    auto& acc = partial[b];
    const std::size_t lo = b * kBlock, hi = std::min(primes.primes.size(), lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const auto p = primes.primes[i];
      for (std::size_t k = 0; k < ns.size(); ++k) acc[k] += jacobi(static_cast<std::int64_t>(ns[k]), p);
    }
  });
  std::vector<std::int64_t> out(ns.size(), 0);
  for (const auto& acc : partial)
    for (std::size_t k = 0; k < ns.size(); ++k) out[k] += acc[k];
  return out;
}

std::vector<std::uint32_t> smallest_factor_table(std::uint64_t N) {
  std::vector<std::uint32_t> spf(N + 1, 0);
  if (N >= 1) spf[1] = 1;
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t j = i; j <= N; j += i)
      if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

void legendre_table(std::uint64_t p, std::span<std::int8_t> chi,
                    std::span<const std::uint32_t> spf) {
  const std::size_t N = chi.size() - 1;
  chi[0] = 0;
  if (N >= 1) chi[1] = 1;
  for (std::size_t n = 2; n <= N; ++n) {
    const std::uint32_t q = spf[n];
    if (q == n)
      chi[n] = static_cast<std::int8_t>(jacobi(static_cast<std::int64_t>(n), p));
    else
      chi[n] = static_cast<std::int8_t>(chi[q] * chi[n / q]);
  }
}

std::vector<std::int64_t> char_sums_range(std::uint64_t N, const PrimeSet& primes, unsigned threads) {
  const auto spf = smallest_factor_table(N);
  constexpr std::size_t kBlock = 1024;
  const std::size_t nblocks = (primes.primes.size() + kBlock - 1) / kBlock;
  std::vector<std::vector<std::int64_t>> partial(nblocks);
  parallel_for(nblocks, threads, [&](std::size_t b) {
    std::vector<std::int64_t> acc(N + 1, 0);
    std::vector<std::int8_t> chi(N + 1);
    const std::size_t lo = b * kBlock, hi = std::min(primes.primes.size(), lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      legendre_table(primes.primes[i], chi, spf);
      for (std::size_t n = 1; n <= N; ++n) acc[n] += chi[n];
    }
    partial[b] = std::move(acc);
  });
  std::vector<std::int64_t> out(N + 1, 0);
  for (const auto& acc : partial)
    for (std::size_t n = 0; n <= N; ++n) out[n] += acc[n];
  return out;
}

double lambda_weighted_sum(std::uint64_t n, std::uint64_t X, int v) {
  const double lam = von_mangoldt(n);
  if (lam == 0.0) return 0.0;
  return lam * static_cast<double>(char_sum_over_primes(n, X, v));
}

MissingCacheError::MissingCacheError(std::vector<std::uint64_t> missing)
    : std::runtime_error([&] {
        std::string msg = "zero cache missing for " + std::to_string(missing.size()) + " prime(s):";
        for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + std::to_string(missing[i]);
        if (missing.size() > 20) msg += " ...";
        return msg;
      }()),
      missing_(std::move(missing)) {}

}  // namespace lowzero
