#include "lowzero/ratios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowzero/density.hpp"
#include "lowzero/errors.hpp"
#include "lowzero/lfunc.hpp"
#include "lowzero/numth.hpp"
#include "lowzero/quadrature.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;

void check_class(int v) {
  if (v != 1 && v != 3) throw DomainError("residue class must be 1 or 3");
}

using Series = std::vector<double>;

Series mul(const Series& a, const Series& b, std::size_t n) {
  Series out(n, 0.0);
  for (std::size_t i = 0; i < std::min(n, a.size()); ++i)
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Series exp_series(const Series& h, std::size_t n) {
  Series g(n, 0.0);
  g[0] = std::exp(h[0]);
  for (std::size_t m = 1; m < n; ++m) {
    double s = 0.0;
    for (std::size_t k = 1; k <= m && k < h.size(); ++k) s += static_cast<double>(k) * h[k] * g[m - k];
    g[m] = s / static_cast<double>(m);
  }
  return g;
}

std::vector<double> breaks(double a, double b, double step) {
  std::vector<double> br;
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  for (int i = 0; i <= n; ++i) br.push_back(a + (b - a) * i / n);
  return br;
}

}  // namespace

double gamma_shift(int v) {
  check_class(v);
  return v == 1 ? 0.25 : 0.75;
}

cplx gamma_ratio(cplx r, int v) {
  const double w0 = gamma_shift(v);
  return std::exp(log_gamma(w0 - r / 2.0) - log_gamma(w0 + r / 2.0));
}

cplx ratios_main_terms(const RatiosParams& prm) {
  check_class(prm.v);
  if (prm.X < 3) throw DomainError("ratios_main_terms: X too small");
  const double lX = std::log(static_cast<double>(prm.X));
  const double im_cap = std::pow(static_cast<double>(prm.X), 1.0 - kRatiosImagEps);
  const cplx a = prm.alpha, b = prm.beta;
  if (!(a.real() > -0.25 && a.real() < 0.25)) throw DomainError("ratios_main_terms: Re alpha outside (-1/4, 1/4)");
  if (!(b.real() >= 1.0 / lX && b.real() < 0.25)) throw DomainError("ratios_main_terms: Re beta outside [1/log X, 1/4)");
  if (std::abs(a.imag()) > im_cap || std::abs(b.imag()) > im_cap)
    throw DomainError("ratios_main_terms: imaginary part beyond X^(1-eps)");
  if (a == b) throw PoleError("ratios_main_terms: alpha = beta puts zeta(1 - alpha + beta) at its pole");

  const auto fam = sieve_primes(prm.X, prm.v);
  cplx twist = 0.0;
  for (auto p : fam.primes) twist += std::exp(-a * std::log(static_cast<double>(p) / kPi));
  const double xs = static_cast<double>(fam.count());
  return xs * zeta(1.0 + 2.0 * a) / zeta(1.0 + a + b) +
         twist * gamma_ratio(a, prm.v) * zeta(1.0 - 2.0 * a) / zeta(1.0 - a + b);
}

double euler_product_check(cplx alpha, cplx beta, std::uint64_t P) {
  if (!(alpha.real() > 0.01 && (alpha + beta).real() > 0.02))
    throw DomainError("euler_product_check: need Re alpha > 0.01 and Re(alpha + beta) > 0.02");
  cplx log_prod = 0.0;
  for (auto p : primes_up_to(P)) {
    const double lp = std::log(static_cast<double>(p));
    const cplx num = std::exp(-(1.0 + alpha + beta) * lp);
    const cplx den = std::exp(-(1.0 + 2.0 * alpha) * lp);
    log_prod += std::log(1.0 - num) - std::log(1.0 - den);
  }
  const cplx target = zeta(1.0 + 2.0 * alpha) / zeta(1.0 + alpha + beta);
  return std::abs(std::exp(log_prod) / target - 1.0);
}

LogDerivPrediction log_deriv_prediction(cplx r, std::uint64_t X, int v, bool exploratory) {
  check_class(v);
  if (X < 3) throw DomainError("log_deriv_prediction: X too small");
  if (r == cplx(0.0, 0.0)) throw PoleError("log_deriv_prediction: r = 0");
  LogDerivPrediction out;
  const double lX = std::log(static_cast<double>(X));
  if (!(r.real() >= 1.0 / lX && r.real() < 0.25)) {
    if (!exploratory) throw DomainError("log_deriv_prediction: Re r outside [1/log X, 1/4)");
    out.out_of_range = true;
  }
  const auto fam = sieve_primes(X, v);
  cplx twist = 0.0;
  for (auto p : fam.primes) twist += std::exp(-r * std::log(static_cast<double>(p) / kPi));
  out.value = static_cast<double>(fam.count()) * zeta_log_deriv(1.0 + 2.0 * r) -
              twist * gamma_ratio(r, v) * zeta(1.0 - 2.0 * r);
  return out;
}

double log_deriv_empirical(double r, std::uint64_t X, int v, double h) {
  check_class(v);
  const double s = 0.5 + r;
  double total = 0.0;
  for (auto p : sieve_primes(X, v).primes) {
    const QuadChar chi(p);
    auto L = [&](double x) { return eval_L(chi, cplx(x, 0.0)).real(); };
    const double d = (-L(s + 2 * h) + 8 * L(s + h) - 8 * L(s - h) + L(s - 2 * h)) / (12 * h);
    total += d / L(s);
  }
  return total;
}

DensityIntegrand::DensityIntegrand(std::uint64_t X, int v) : X_(X), v_(v), w0_(gamma_shift(v)) {
  for (auto p : sieve_primes(X, v).primes) logs_.push_back(std::log(static_cast<double>(p) / kPi));
  for (double l : logs_) sum_log_ += l;

  // Pole part 2 X* zeta'/zeta(1+u) - 2 G zeta(1-u) sum_p e^(-u L_p / 2) as a series in u = 2it.
  const auto st = stieltjes_series();
  const std::size_t n = st.size();
  const Series S(st.begin(), st.end());
  Series num(n), den(n, 0.0), C(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) num[k] = static_cast<double>(k + 1) * S[k];
  den[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) den[k] = S[k - 1];
  for (std::size_t m = 0; m < n; ++m) {
    double c = num[m];
    for (std::size_t k = 1; k <= m; ++k) c -= den[k] * C[m - k];
    C[m] = c;
  }
  // log G = -2 sum_{k odd} psi^(k-1)(w0) (u/4)^k / k!
  Series h(n + 1, 0.0);
  double fact = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    fact *= static_cast<double>(k);
    if (k % 2 == 1)
      h[k] = -2.0 * polygamma(static_cast<int>(k) - 1, cplx(w0_, 0.0)).real() / (std::pow(4.0, double(k)) * fact);
  }
  const Series g = exp_series(h, n + 1);
  Series e(n + 1, 0.0);
  for (double l : logs_) {
    double term = 1.0;
    for (std::size_t j = 0; j <= n; ++j) {
      e[j] += term;
      term *= -0.5 * l / static_cast<double>(j + 1);
    }
  }
  const Series E = mul(g, e, n + 1);
  Series Sneg(n);
  for (std::size_t k = 0; k < n; ++k) Sneg[k] = (k % 2 ? -1.0 : 1.0) * S[k];
  const Series ES = mul(E, Sneg, n);
  const double xs = static_cast<double>(x_star());
  series_.resize(n);
  for (std::size_t k = 0; k < n; ++k) series_[k] = 2.0 * (xs * C[k] + E[k + 1] - ES[k]);
}

cplx DensityIntegrand::pole_part_naive(double t) const {
  double c = 0.0, s = 0.0;
  for (double l : logs_) {
    c += std::cos(t * l);
    s += std::sin(t * l);
  }
  const cplx twist(c, -s);
  const cplx u(0.0, 2.0 * t);
  return 2.0 * static_cast<double>(x_star()) * zeta_log_deriv(1.0 + u) -
         2.0 * gamma_ratio(cplx(0.0, t), v_) * zeta(1.0 - u) * twist;
}

cplx DensityIntegrand::pole_part_fused(double t) const {
  const cplx u(0.0, 2.0 * t);
  cplx acc = 0.0;
  for (std::size_t k = series_.size(); k-- > 0;) acc = acc * u + series_[k];
  return acc;
}

double DensityIntegrand::naive(double t) const {
  if (t == 0.0) throw PoleError("DensityIntegrand::naive: t = 0");
  return sum_log_ + static_cast<double>(x_star()) * digamma(cplx(w0_, t / 2)).real() + pole_part_naive(t).real();
}

double DensityIntegrand::fused(double t) const {
  return sum_log_ + static_cast<double>(x_star()) * digamma(cplx(w0_, t / 2)).real() + pole_part_fused(t).real();
}

double DensityIntegrand::operator()(double t) const {
  return std::abs(t) < kFusedRadius ? fused(t) : naive(t);
}

double density_prediction(const DensityIntegrand& B, const std::function<double(double)>& f, double t_max) {
  if (!(t_max > 0.0)) throw DomainError("density_prediction: t_max must be positive");
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-12 * std::max<double>(1.0, static_cast<double>(B.x_star()));
  const double I = quad::integrate_pieces([&](double t) { return f(t) * B(t); }, breaks(0.0, t_max, 0.05), opt);
  return I / kPi;
}

double density_prediction(const std::function<double(double)>& f, double t_max, std::uint64_t X, int v) {
  return density_prediction(DensityIntegrand(X, v), f, t_max);
}

double kernel_density_prediction(const DensityIntegrand& B, const TestFunction& tf, const KernelSpec& kernel) {
  const double X = static_cast<double>(B.X());
  const double scale = std::log(X) / (2 * kPi);
  const double t_max = std::min(truncation_height(kernel, 0.5), tf.r_cutoff / scale);
  auto f = [&](double t) { return eval_K(kernel, cplx(0.5, t)).real() * tf.r(t * scale); };
  return density_prediction(B, f, t_max) / density_norm(kernel, X);
}

ScaledPrediction scaled_density_prediction(const DensityIntegrand& B, const TestFunction& g) {
  const double scale = std::log(static_cast<double>(B.X())) / (2 * kPi);
  ScaledPrediction out;
  out.scaled = density_prediction(B, [&](double t) { return g.r(t * scale); }, g.r_cutoff / scale) /
               static_cast<double>(B.x_star());
  out.limit = limit_density(g);
  out.gap = out.scaled - out.limit;
  return out;
}

ScaledPrediction scaled_density_prediction(const TestFunction& g, std::uint64_t X, int v) {
  return scaled_density_prediction(DensityIntegrand(X, v), g);
}

IntegrandIdentity scaled_integrand_identity(double tau) {
  if (tau == 0.0) throw PoleError("scaled_integrand_identity: tau = 0");
  const cplx d(0.0, 4 * kPi * tau);
  const cplx e = std::polar(1.0, 2 * kPi * tau);
  const cplx lhs = 1.0 + std::conj(e) / d - e / d;
  IntegrandIdentity out;
  out.exponential_form = lhs.real();
  out.imag_part = lhs.imag();
  out.sinc_form = symplectic_density(tau);
  return out;
}

}  // namespace lowzero
