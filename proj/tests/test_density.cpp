#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lowzero/density.hpp"
#include "lowzero/errors.hpp"
#include "lowzero/family.hpp"
#include "lowzero/numth.hpp"

using namespace lowzero;

namespace {

const MellinPair& default_pair() {
  static const MellinPair pair{gaussian_kernel()};
  return pair;
}

ZeroFamily small_family(std::uint64_t X, int v) {
  const auto ps = sieve_primes(X, v).primes;
  return ZeroFamily::from_lists(X, v, 8.0, find_zeros_family(ps, 8.0, 1));
}

}  // namespace

TEST_CASE("explicit formula balances once every term is kept") {
  for (auto p : {101ull, 103ull, 13ull, 7ull}) {
    const QuadChar chi(p);
    const auto z = find_zeros(chi, 8.0);
    REQUIRE(z.certified);
    for (double x : {1.0, 4.0, 16.0, 64.0}) {
      const auto s = explicit_formula_sides(chi, x, default_pair(), z);
      CHECK(std::abs(s.lhs.imag()) < 1e-12);
      CHECK(s.exact_residual < 1e-9);
    }
  }
}

TEST_CASE("short explicit formula misses a bounded constant") {
  // residual * sqrt(x) equals the dropped terms; mpmath values with a truncated dual sum.
  struct Row {
    std::uint64_t p;
    double x, c;
  };
  for (const Row r : {Row{101, 4, 0.735233609441}, Row{101, 16, 1.14986692473}, Row{103, 4, 0.170079565396},
                      Row{103, 16, 0.187322258192}}) {
    const QuadChar chi(r.p);
    const auto s = explicit_formula_sides(chi, r.x, default_pair(), find_zeros(chi, 8.0));
    CHECK(s.constant == doctest::Approx(r.c).epsilon(1e-4));
  }
}

TEST_CASE("explicit formula rejects bad input") {
  const QuadChar chi(13);
  auto z = find_zeros(chi, 8.0);
  CHECK_THROWS_AS(explicit_formula_sides(chi, 0.5, default_pair(), z), DomainError);
  CHECK_THROWS_AS(explicit_formula_sides(QuadChar(17), 4.0, default_pair(), z), DomainError);
  z.certified = false;
  CHECK_THROWS_AS(explicit_formula_sides(chi, 4.0, default_pair(), z), UncertifiedZerosError);
  const auto low = find_zeros(chi, 2.0);
  CHECK_THROWS_AS(explicit_formula_sides(chi, 4.0, default_pair(), low), DomainError);
}

TEST_CASE("diagonal diagnostic equals the direct double sum") {
  const std::uint64_t X = 200;
  const double x = 30.0;
  const auto d = diagonal_diagnostic(X, 1, x, default_pair());
  // Brute force: sum over p and over m coprime to p.
  double direct = 0.0;
  for (auto p : sieve_primes(X, 1).primes)
    for (std::uint64_t m = 2; m < 400000; ++m) {
      if (m % p == 0) continue;
      const double L = von_mangoldt(m);
      if (L > 0) direct += L * a_closed_form(double(m) * double(m) / x);
    }
  CHECK(d.A1_numeric == doctest::Approx(-direct / std::sqrt(x)).epsilon(1e-11));
  CHECK(d.A1_main == doctest::Approx(-0.25 * li(200.0)).epsilon(1e-14));
  CHECK(d.gap == doctest::Approx(d.A1_numeric - d.A1_main));
}

TEST_CASE("form factor prediction") {
  const double X = 1e5;
  const double LiX = li(X);
  const double at0 = -1.0 + 2.0 / (2 * std::sqrt(std::numbers::pi)) * (X - LiX * std::log(2 * std::numbers::pi)) / LiX;
  CHECK(form_factor_prediction(X, 0.0, default_pair()) == doctest::Approx(at0).epsilon(1e-13));
  for (double a : {0.1, 0.5, 1.3})
    CHECK(form_factor_prediction(X, a, default_pair()) == form_factor_prediction(X, -a, default_pair()));
  // Past alpha = 1 the main term is a small correction to -1.
  CHECK(std::abs(form_factor_prediction(X, 1.5, default_pair()) + 1.0) < 0.05);
  CHECK_THROWS_AS(form_factor_prediction(1.0, 0.2, default_pair()), DomainError);
}

TEST_CASE("form factor is even and matches a direct sum") {
  const auto fam = small_family(600, 1);
  REQUIRE(fam.x_star() == sieve_primes(600, 1).count());
  const FormFactor F(fam, default_pair().spec);
  for (double a : {0.0, 0.3, 0.77, 1.4}) {
    CHECK(F(a) == doctest::Approx(F(-a)).epsilon(1e-14));
    double s = 0.0;
    for (double g : fam.gammas) s += 2 * std::exp(-g * g) * std::cos(a * g * std::log(600.0));
    CHECK(F(a) == doctest::Approx(s / (0.25 * li(600.0))).epsilon(1e-12));
  }
  CHECK(form_factor(fam, 0.3, default_pair().spec) == doctest::Approx(F(0.3)));
}

TEST_CASE("pairing identity holds for compactly supported tests") {
  const auto fam = small_family(1000, 3);
  for (const auto& tf : {fejer(0.5), fejer(0.99), bump(0.8), fejer(1.7)}) {
    const auto chk = pairing_identity_check(fam, tf, default_pair().spec);
    CHECK(chk.residual < 1e-9);
  }
  const auto gchk = pairing_identity_check(fam, gaussian_tf(), default_pair().spec);
  CHECK(gchk.residual < 1e-9);
}

TEST_CASE("empirical density normalisations differ by a factor two") {
  const auto fam = small_family(500, 1);
  const auto d = one_level_density_empirical(fam, fejer(0.9), default_pair().spec);
  CHECK(d.density_normalised == doctest::Approx(0.5 * d.form_factor_normalised).epsilon(1e-15));
  CHECK(d.form_factor_normalised > 0.0);
  const auto zero = one_level_density_empirical(fam, zero_tf(), default_pair().spec);
  CHECK(zero.form_factor_normalised == 0.0);
}

TEST_CASE("zero family refuses uncertified lists") {
  ZeroList bad;
  bad.p = 5;
  bad.certified = false;
  CHECK_THROWS_AS(ZeroFamily::from_lists(10, 1, 8.0, {bad}), UncertifiedZerosError);
}
