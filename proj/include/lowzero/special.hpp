#pragma once

// Complex special functions in double precision.
//
// Contracts (validated region -> relative error):
//   log_gamma          |s| <= 100, principal branch          1e-12
//   digamma            |s| <= 100                            1e-11
//   zeta               Re s >= -1, |Im s| <= 200             1e-10
//   zeta_log_deriv     Re s >= 1 - 1/log(|Im s| + 2)         1e-9
//   upper_incomplete_gamma  Re s in [-2, 4], 0 < x <= 500    1e-10

#include <complex>
#include <span>

namespace lowzero {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct AccuracyContract {
  double abs_tol;
  double rel_tol;
  const char* domain;
};

cplx log_gamma(cplx s);
cplx digamma(cplx s);

/// m-th derivative of digamma, m >= 0.
cplx polygamma(int m, cplx s);

/// log Gamma(1 + w) for |w| <= 1/2, accurate relative to w.
cplx lgamma1p(cplx w);

cplx zeta(cplx s);

/// zeta'(s).
cplx zeta_deriv(cplx s);

cplx zeta_log_deriv(cplx s);

/// Laurent data at s = 1: zeta(1 + w) = 1/w + sum_n stieltjes_series[n] w^n with
/// stieltjes_series[n] = (-1)^n gamma_n / n!.
std::span<const double> stieltjes_series();

/// Gamma(s, z) = int_z^inf t^(s-1) e^(-t) dt along a ray, for z off the closed negative axis.
cplx upper_incomplete_gamma(cplx s, cplx z);

/// Same, with Gamma(s) supplied by the caller (reused across many z for one s).
cplx upper_incomplete_gamma(cplx s, cplx z, cplx gamma_s);

inline cplx upper_incomplete_gamma(cplx s, double x) { return upper_incomplete_gamma(s, cplx(x, 0.0)); }

/// E1(z) = Gamma(0, z).
cplx expint_e1(cplx z);

/// (exp(w c) - 1) / w, continuous through w = 0.
cplx expm1_over(cplx w, cplx c);

cplx expm1(cplx z);

const AccuracyContract& contract(const char* name);

}  // namespace lowzero
