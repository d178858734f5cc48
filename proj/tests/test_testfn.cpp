#include <cmath>

#include "doctest.h"
#include "lowzero/testfn.hpp"

using namespace lowzero;

TEST_CASE("closed-form pairs are Fourier duals") {
  for (const auto& tf : {fejer(0.5), fejer(0.9), gaussian_tf(), bump(0.7)}) {
    CAPTURE(tf.name);
    if (std::isfinite(tf.support)) CHECK(std::abs(r_from_rhat(tf, 0.0) - tf.r(0.0)) < 1e-10);
    for (double a : {0.0, 0.1, 0.33, 0.6}) CHECK(std::abs(rhat_from_r(tf, a) - tf.r_hat(a)) < 1e-8);
    for (double u : {0.2, 1.3, 4.0}) {
      CHECK(std::abs(tf.r(u) - tf.r(-u)) < 1e-12);
      CHECK(std::abs(tf.r_hat(u) - tf.r_hat(-u)) < 1e-12);
      if (std::isfinite(tf.support)) CHECK(std::abs(r_from_rhat(tf, u) - tf.r(u)) < 1e-10);
    }
  }
  // mpmath quadrature of 2 int_0^0.7 (1-(a/0.7)^2)^2 cos(2 pi 1.3 a) da
  CHECK(std::abs(bump(0.7).r(1.3) - 0.002615335750187035221992804) < 1e-13);
  CHECK(std::abs(bump(0.7).r(1e-3) - bump(0.7).r(0.0)) < 1e-5);
}

TEST_CASE("symplectic limit on both sides") {
  for (double lam : {0.5, 0.7, 0.9, 0.99}) {
    auto ld = limit_density_both(fejer(lam));
    CHECK(std::abs(ld.fourier - (1.0 / lam - 0.5)) < 1e-12);
    CHECK(std::abs(ld.physical - ld.fourier) < 1e-8);
  }
  auto g = limit_density_both(gaussian_tf());
  // 1 - erf(sqrt(pi))/2
  CHECK(std::abs(g.fourier - 0.5060944410924014434461941) < 1e-12);
  CHECK(std::abs(g.physical - g.fourier) < 1e-9);
  auto b = limit_density_both(bump(0.8));
  CHECK(std::abs(b.physical - b.fourier) < 1e-8);
  CHECK(limit_density(zero_tf()) == 0.0);
  CHECK(std::abs(symplectic_density(1e-5) - (1.0 - std::sin(2e-5 * M_PI) / (2e-5 * M_PI))) < 1e-15);
}

TEST_CASE("sampled transforms") {
  auto tf = sampled_tf("tri", {0.0, 0.5}, {2.0, 0.0});
  auto ref = fejer(0.5);
  for (double u : {0.0, 0.4, 2.5}) CHECK(std::abs(tf.r(u) - ref.r(u)) < 1e-12);
  CHECK(std::abs(tf.r_hat(0.2) - ref.r_hat(0.2)) < 1e-14);
  CHECK_THROWS(sampled_tf("bad", {0.1, 0.5}, {1.0, 0.0}));
}
