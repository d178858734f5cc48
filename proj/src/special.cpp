#include "lowzero/special.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>

#include "lowzero/errors.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0};

// Stieltjes constants gamma_0..gamma_8 from tools/derive_stieltjes.py.
constexpr std::array<double, 9> kStieltjes = {
    0.5772156649015328606065,     -0.07281584548367672486059,  -0.00969036319287231848453,
    0.00205383442030334586616,    0.002325370065467300057468,  0.0007933238173010627017533,
    -0.0002387693454301996098724, -0.0005272895670577510460741, -0.0003521233538030395096021};

const std::array<double, 9>& laurent_coeffs() {
  static const std::array<double, 9> c = [] {
    std::array<double, 9> out{};
    double fact = 1.0;
    for (int n = 0; n < 9; ++n) {
      if (n > 0) fact *= n;
      out[n] = ((n % 2) ? -1.0 : 1.0) * kStieltjes[n] / fact;
    }
    return out;
  }();
  return c;
}

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::nearbyint(s.real());
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cplx log_gamma_upper(cplx s) {
  // Shift until Re s >= 10, then Stirling with 10 Bernoulli corrections.
  cplx shift_log = 0.0;
  while (s.real() < 10.0) {
    shift_log += std::log(s);
    s += 1.0;
  }
  const cplx inv = 1.0 / s, inv2 = inv * inv;
  cplx corr = 0.0, pw = inv;
  for (int k = 1; k <= 10; ++k) {
    corr += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (s - 0.5) * std::log(s) - s + 0.5 * std::log(2.0 * kPi) + corr - shift_log;
}

cplx polygamma_upper(int m, cplx s) {
  const double shift_to = 12.0 + m;
  cplx acc = 0.0;
  const double mfact = factorial(m);
  const double sign = (m % 2) ? 1.0 : -1.0;  // (-1)^(m+1)
  while (s.real() < shift_to) {
    if (m == 0)
      acc -= 1.0 / s;
    else
      acc += sign * mfact / std::pow(s, m + 1);
    s += 1.0;
  }
  const cplx inv = 1.0 / s, inv2 = inv * inv;
  cplx asym;
  if (m == 0) {
    asym = std::log(s) - 0.5 * inv;
    cplx pw = inv2;
    for (int k = 1; k <= 12; ++k) {
      asym -= kBernoulli[k - 1] / (2.0 * k) * pw;
      pw *= inv2;
    }
  } else {
    const cplx zm = std::pow(inv, m);
    asym = factorial(m - 1) * zm + mfact * 0.5 * zm * inv;
    cplx pw = zm * inv2;
    for (int k = 1; k <= 12; ++k) {
      asym += kBernoulli[k - 1] * factorial(2 * k + m - 1) / factorial(2 * k) * pw;
      pw *= inv2;
    }
    asym *= sign;
  }
  return asym + acc;
}

// zeta(s) and zeta'(s) by Euler-Maclaurin with N = max(10, ceil|Im s|), M = 12.
void zeta_em(cplx s, cplx* value, cplx* deriv) {
  const int N = std::max(10, static_cast<int>(std::ceil(std::abs(s.imag()))) + 1);
  cplx sum = 0.0, dsum = 0.0;
  for (int n = 1; n < N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const cplx term = std::exp(-s * ln);
    sum += term;
    dsum -= ln * term;
  }
  const double lN = std::log(static_cast<double>(N));
  const cplx Ns = std::exp(-s * lN);  // N^-s
  const cplx sm1 = s - 1.0;
  sum += static_cast<double>(N) * Ns / sm1 + 0.5 * Ns;
  dsum += static_cast<double>(N) * Ns * (-lN / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * lN * Ns;
  // Rising product P = s(s+1)...(s+2k-2) and its derivative by the product rule.
  cplx P = s, dP = 1.0;
  double fact = 2.0;  // (2k)!
  cplx Npow = Ns / static_cast<double>(N);  // N^(-s-1)
  const double invN2 = 1.0 / (static_cast<double>(N) * N);
  for (int k = 1; k <= 12; ++k) {
    const double c = kBernoulli[k - 1] / fact;
    sum += c * P * Npow;
    dsum += c * (dP - lN * P) * Npow;
    // advance to k+1: multiply by (s+2k-1)(s+2k)
    for (int j = 2 * k - 1; j <= 2 * k; ++j) {
      dP = dP * (s + static_cast<double>(j)) + P;
      P *= (s + static_cast<double>(j));
    }
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    Npow *= invN2;
  }
  if (value) *value = sum;
  if (deriv) *deriv = dsum;
}

const std::array<double, 64>& zeta_integer_table() {
  // zeta(k) for k = 2..65 (index k - 2).
  static const std::array<double, 64> t = [] {
    std::array<double, 64> out{};
    for (int k = 2; k < 66; ++k) {
      cplx v;
      zeta_em(cplx(k, 0.0), &v, nullptr);
      out[k - 2] = v.real();
    }
    return out;
  }();
  return t;
}

// lgamma1p(w) / w = -gamma + sum_{k>=2} (-1)^k zeta(k) w^(k-1) / k
cplx lgamma1p_over_w(cplx w) {
  const auto& z = zeta_integer_table();
  cplx acc = 0.0;
  for (int k = 65; k >= 2; --k) acc = acc * w + ((k % 2) ? -1.0 : 1.0) * z[k - 2] / k;
  return -kEulerGamma + acc * w;
}

cplx incgamma_cf(cplx w, cplx z) {
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0 - w;
  cplx f = (std::abs(b) < tiny) ? cplx(tiny) : b;
  cplx C = f, D = 0.0;
  for (int k = 1; k < 20000; ++k) {
    const cplx a = -static_cast<double>(k) * (static_cast<double>(k) - w);
    b += 2.0;
    D = b + a * D;
    if (std::abs(D) < tiny) D = tiny;
    C = b + a / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1.0 / D;
    const cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 4e-16) return std::exp(w * std::log(z) - z) / f;
  }
  throw QuadratureError("incomplete gamma continued fraction did not converge");
}

// Series region with Re w >= -1/2. gamma_w may be null.
cplx incgamma_series(cplx w, cplx z, const cplx* gamma_w) {
  const cplx logz = std::log(z);
  if (std::abs(w) < 0.5) {
    const cplx h = w * logz;
    const cplx c = lgamma1p_over_w(w) - logz;
    const cplx head = std::exp(h) * expm1_over(w, c);
    cplx term = 1.0, tail = 0.0;
    for (int k = 1; k < 500; ++k) {
      term *= -z / static_cast<double>(k);
      const cplx add = term / (w + static_cast<double>(k));
      tail += add;
      if (std::abs(add) < 1e-17 * std::abs(tail)) break;
    }
    return head - std::exp(h) * tail;
  }
  cplx term = 1.0 / w, sum = term;
  for (int k = 1; k < 5000; ++k) {
    term *= z / (w + static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  const cplx gw = gamma_w ? *gamma_w : std::exp(log_gamma(w));
  return gw - std::exp(w * logz - z) * sum;
}

}  // namespace

cplx log_gamma(cplx s) {
  if (is_nonpositive_integer(s)) throw PoleError("log_gamma: pole at non-positive integer");
  if (s.imag() < 0.0) return std::conj(log_gamma_upper(std::conj(s)));
  return log_gamma_upper(s);
}

cplx digamma(cplx s) { return polygamma(0, s); }

cplx polygamma(int m, cplx s) {
  if (m < 0) throw DomainError("polygamma: order must be non-negative");
  if (is_nonpositive_integer(s)) throw PoleError("polygamma: pole at non-positive integer");
  if (s.imag() < 0.0) return std::conj(polygamma_upper(m, std::conj(s)));
  return polygamma_upper(m, s);
}

cplx lgamma1p(cplx w) {
  if (std::abs(w) > 0.5) return log_gamma(1.0 + w);
  return w * lgamma1p_over_w(w);
}

std::span<const double> stieltjes_series() {
  const auto& c = laurent_coeffs();
  return {c.data(), c.size()};
}

cplx zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.imag() < 0.0) return std::conj(zeta(std::conj(s)));
  const cplx w = s - 1.0;
  if (std::abs(w) < 0.1) {
    const auto& c = laurent_coeffs();
    cplx acc = 0.0;
    for (int n = 8; n >= 0; --n) acc = acc * w + c[n];
    return 1.0 / w + acc;
  }
  cplx v;
  zeta_em(s, &v, nullptr);
  return v;
}

cplx zeta_deriv(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta_deriv: pole at s = 1");
  if (s.imag() < 0.0) return std::conj(zeta_deriv(std::conj(s)));
  const cplx w = s - 1.0;
  if (std::abs(w) < 0.1) {
    const auto& c = laurent_coeffs();
    cplx acc = 0.0;
    for (int n = 8; n >= 1; --n) acc = acc * w + static_cast<double>(n) * c[n];
    return -1.0 / (w * w) + acc;
  }
  cplx d;
  zeta_em(s, nullptr, &d);
  return d;
}

cplx zeta_log_deriv(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta_log_deriv: pole at s = 1");
  if (s.imag() < 0.0) return std::conj(zeta_log_deriv(std::conj(s)));
  const cplx w = s - 1.0;
  if (std::abs(w) < 0.1) {
    const auto& c = laurent_coeffs();
    cplx S = 0.0, dS = 0.0;
    for (int n = 8; n >= 0; --n) S = S * w + c[n];
    for (int n = 8; n >= 1; --n) dS = dS * w + static_cast<double>(n) * c[n];
    return (-1.0 + w * w * dS) / (w * (1.0 + w * S));
  }
  cplx v, d;
  zeta_em(s, &v, &d);
  if (std::abs(v) < 1e-300) throw PoleError("zeta_log_deriv: zeta vanishes");
  return d / v;
}

cplx expm1(cplx z) {
  const double x = z.real(), y = z.imag();
  const double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

cplx expm1_over(cplx w, cplx c) {
  if (w == cplx(0.0, 0.0)) return c;
  return expm1(w * c) / w;
}

namespace {

cplx incgamma_impl(cplx w, cplx z, const cplx* gamma_w) {
  if (z == cplx(0.0, 0.0)) {
    if (w.real() > 0.0) return gamma_w ? *gamma_w : std::exp(log_gamma(w));
    throw PoleError("upper_incomplete_gamma: divergent at z = 0");
  }
  if (z.real() <= 0.0 && z.imag() == 0.0)
    throw DomainError("upper_incomplete_gamma: z on the negative real axis");
  const double az = std::abs(z);
  if (az >= std::abs(w) + 1.0 && az >= 1.0) return incgamma_cf(w, z);
  if (w.real() < -0.5) {
    const int m = static_cast<int>(std::ceil(-0.5 - w.real()));
    cplx G = incgamma_series(w + static_cast<double>(m), z, nullptr);
    const cplx logz = std::log(z);
    for (int k = m - 1; k >= 0; --k) {
      const cplx a = w + static_cast<double>(k);
      if (a == cplx(0.0, 0.0)) throw PoleError("upper_incomplete_gamma: recurrence hit zero");
      G = (G - std::exp(a * logz - z)) / a;
    }
    return G;
  }
  return incgamma_series(w, z, gamma_w);
}

}  // namespace

cplx upper_incomplete_gamma(cplx w, cplx z) {
  if (z.imag() < 0.0 || (z.imag() == 0.0 && w.imag() < 0.0))
    return std::conj(incgamma_impl(std::conj(w), std::conj(z), nullptr));
  return incgamma_impl(w, z, nullptr);
}

cplx upper_incomplete_gamma(cplx w, cplx z, cplx gamma_w) { return incgamma_impl(w, z, &gamma_w); }

cplx expint_e1(cplx z) { return upper_incomplete_gamma(cplx(0.0, 0.0), z); }

const AccuracyContract& contract(const char* name) {
  static const AccuracyContract table[] = {
      {0.0, 1e-12, "log_gamma: |s| <= 100"},
      {0.0, 1e-11, "digamma: |s| <= 100"},
      {0.0, 1e-10, "zeta: Re s >= -1, |Im s| <= 200"},
      {0.0, 1e-9, "zeta_log_deriv: Re s >= 1 - 1/log(|Im s|+2)"},
      {0.0, 1e-10, "upper_incomplete_gamma: Re s in [-2,4], 0 < x <= 500"},
  };
  static const char* names[] = {"log_gamma", "digamma", "zeta", "zeta_log_deriv",
                                "upper_incomplete_gamma"};
  for (std::size_t i = 0; i < std::size(names); ++i)
    if (std::strcmp(names[i], name) == 0) return table[i];
  throw DomainError(std::string("no accuracy contract named ") + name);
}

}  // namespace lowzero
