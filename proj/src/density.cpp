#include "lowzero/density.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "lowzero/errors.hpp"
#include "lowzero/numth.hpp"
#include "lowzero/quadrature.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kMaxPrimeSum = 100'000'000;

// Primes shared by the explicit-formula sums; grown on demand.
std::vector<std::uint64_t> primes_cached(std::uint64_t N) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes;
  static std::uint64_t limit = 0;
  std::lock_guard lock(mu);
  if (N > limit) {
    primes = primes_up_to(N);
    limit = N;
  }
  std::vector<std::uint64_t> out(primes.begin(), std::upper_bound(primes.begin(), primes.end(), N));
  return out;
}

// |log y| beyond which a(y) < 1e-16-ish for exp(kappa (s-1/2)^2); solves L^2/(4k) + L/2 = 40.
double log_cut(const KernelSpec& k) {
  const double kappa = k.kappa > 0 ? k.kappa : 1.0;
  return -kappa + std::sqrt(kappa * kappa + 160.0 * kappa);
}

std::vector<double> breaks(double a, double b, double step) {
  std::vector<double> br;
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  for (int i = 0; i <= n; ++i) br.push_back(a + (b - a) * i / n);
  return br;
}

}  // namespace

double form_factor_norm(const KernelSpec& kernel, double X) { return 0.25 * kernel.at_half() * li(X); }
double density_norm(const KernelSpec& kernel, double X) { return 0.5 * kernel.at_half() * li(X); }

ExplicitSides explicit_formula_sides(const QuadChar& chi, double x, const MellinPair& pair, const ZeroList& zeros) {
  if (!(x >= 1.0)) throw DomainError("explicit_formula_sides: x must be at least 1");
  if (!zeros.certified) throw UncertifiedZerosError(chi.p);
  if (zeros.p != chi.p) throw DomainError("explicit_formula_sides: zero list belongs to another prime");
  const KernelSpec& K = pair.spec;
  if (std::abs(eval_K(K, cplx(0.5, zeros.T))) > 1e-14)
    throw DomainError("explicit_formula_sides: zeros do not reach the kernel's decay height");

  ExplicitSides out;
  const double lx = std::log(x);
  for (double g : zeros.gammas) {
    const cplx w = eval_K(K, cplx(0.5, g)) * std::polar(1.0, g * lx);
    const cplx wm = eval_K(K, cplx(0.5, -g)) * std::polar(1.0, -g * lx);
    out.lhs += w + wm;
  }

  const double L = log_cut(K);
  const double Nd = x * std::exp(L);
  if (Nd > static_cast<double>(kMaxPrimeSum))
    throw DomainError("explicit_formula_sides: prime sum would exceed the term cap");
  out.n_max = static_cast<std::uint64_t>(Nd);
  const auto primes = primes_cached(out.n_max);
  double direct = 0.0, dual = 0.0;
  const double dual_cut = std::exp(L) / x;
  for (auto q : primes) {
    const int cq = jacobi(static_cast<std::int64_t>(q), chi.p);
    if (cq == 0) continue;
    const double lq = std::log(static_cast<double>(q));
    int c = 1;
    for (double n = static_cast<double>(q); n <= Nd; n *= static_cast<double>(q)) {
      c *= cq;
      direct += c * lq * pair.a(n / x);
      if (n <= dual_cut) dual += c * lq / n * pair.a(1.0 / (n * x));
    }
  }
  const double isx = 1.0 / std::sqrt(x);
  const double a_inv = pair.a(1.0 / x);
  const double p = static_cast<double>(chi.p);
  out.rhs = isx * (-direct + a_inv * std::log(p / (2 * kPi)));

  // Gamma-factor integral on Re s = -1/2.
  const double c = -0.5;
  const double a = chi.a;
  const double H = truncation_height(K, c);
  auto integrand = [&](double t) {
    const cplx s(c, t);
    const cplx v = eval_K(K, s) * std::exp(s * lx) * (digamma((s + a) / 2.0) + digamma((1.0 - s + a) / 2.0));
    return v.real();
  };
  const double J = quad::integrate_pieces(integrand, breaks(0.0, H, 0.5)) / kPi;
  double exact = -direct - dual + a_inv * std::log(p / kPi) + 0.5 * J;
  if (chi.a == 0) exact -= eval_K(K, 0.0).real();
  out.rhs_exact = isx * exact;
  out.residual = std::abs(out.lhs - out.rhs);
  out.constant = out.residual / isx;
  out.exact_residual = std::abs(out.lhs - out.rhs_exact);
  return out;
}

DiagonalDiagnostic diagonal_diagnostic(std::uint64_t X, int v, double x, const MellinPair& pair) {
  if (!(x >= 1.0)) throw DomainError("diagonal_diagnostic: x must be at least 1");
  const auto fam = sieve_primes(X, v);
  const double L = log_cut(pair.spec);
  const double mmax = std::sqrt(x * std::exp(L));
  const auto qs = primes_cached(static_cast<std::uint64_t>(mmax));
  // S = sum_m a(m^2/x) Lambda(m); each p drops its own powers.
  double S = 0.0;
  for (auto q : qs) {
    const double lq = std::log(static_cast<double>(q));
    for (double m = static_cast<double>(q); m <= mmax; m *= static_cast<double>(q)) S += lq * pair.a(m * m / x);
  }
  double total = static_cast<double>(fam.count()) * S;
  for (auto p : fam.primes) {
    const double lp = std::log(static_cast<double>(p));
    for (double m = static_cast<double>(p); m <= mmax; m *= static_cast<double>(p)) total -= lp * pair.a(m * m / x);
  }
  DiagonalDiagnostic d;
  d.A1_numeric = -total / std::sqrt(x);
  const double LiX = li(static_cast<double>(X));
  d.A1_main = -0.25 * pair.spec.at_half() * LiX;
  d.gap = d.A1_numeric - d.A1_main;
  const double dX = static_cast<double>(X);
  d.scaled_gap = d.gap / (std::pow(x, -0.25) * LiX + std::sqrt(dX) * std::log(dX));
  return d;
}

ZeroFamily ZeroFamily::from_lists(std::uint64_t X, int v, double T, const std::vector<ZeroList>& lists) {
  ZeroFamily f;
  f.X = X;
  f.v = v;
  f.T = T;
  for (const auto& z : lists) {
    if (!z.certified) throw UncertifiedZerosError(z.p);
    f.primes.push_back(z.p);
    f.gammas.insert(f.gammas.end(), z.gammas.begin(), z.gammas.end());
    if (z.central_flag) ++f.central_flags;
  }
  return f;
}

ZeroFamily ZeroFamily::from_cache(const ZeroCache& cache, std::uint64_t X, int v, double T) {
  const auto ps = sieve_primes(X, v).primes;
  return from_lists(X, v, T, cache.load_all(ps, T));
}

FormFactor::FormFactor(const ZeroFamily& fam, const KernelSpec& kernel)
    : gamma_(fam.gammas), norm_(form_factor_norm(kernel, static_cast<double>(fam.X))),
      log_x_(std::log(static_cast<double>(fam.X))) {
  weight_.resize(gamma_.size());
  for (std::size_t i = 0; i < gamma_.size(); ++i) weight_[i] = 2.0 * eval_K(kernel, cplx(0.5, gamma_[i])).real();
}

double FormFactor::operator()(double alpha) const {
  double s = 0.0;
  const double f = alpha * log_x_;
  for (std::size_t i = 0; i < gamma_.size(); ++i) s += weight_[i] * std::cos(f * gamma_[i]);
  return s / norm_;
}

double FormFactor::weighted_sum(const TestFunction& tf) const {
  double s = 0.0;
  const double f = log_x_ / (2 * kPi);
  for (std::size_t i = 0; i < gamma_.size(); ++i) s += weight_[i] * tf.r(gamma_[i] * f);
  return s / norm_;
}

double form_factor(const ZeroFamily& fam, double alpha, const KernelSpec& kernel) {
  return FormFactor(fam, kernel)(alpha);
}

double form_factor_prediction(double X, double alpha, const MellinPair& pair) {
  if (!(X >= 2.0)) throw DomainError("form_factor_prediction: X must be at least 2");
  const double aa = std::abs(alpha);
  const double LiX = li(X);
  const double y = std::pow(X, -aa);
  return -1.0 + 2.0 / pair.spec.at_half() * std::pow(X, -aa / 2) * pair.a(y) * (X - LiX * std::log(2 * kPi)) / LiX;
}

FormFactorGrid form_factor_grid(const ZeroFamily& fam, const MellinPair& pair, const std::vector<double>& alphas) {
  FormFactorGrid g;
  g.X = static_cast<double>(fam.X);
  g.v = fam.v;
  g.kernel = pair.spec.name;
  g.alphas = alphas;
  const FormFactor F(fam, pair.spec);
  for (double a : alphas) {
    g.values.push_back(F(a));
    g.prediction.push_back(form_factor_prediction(g.X, a, pair));
  }
  return g;
}

DensityValue one_level_density_empirical(const ZeroFamily& fam, const TestFunction& tf, const KernelSpec& kernel) {
  const FormFactor F(fam, kernel);
  DensityValue d;
  d.form_factor_normalised = F.weighted_sum(tf);
  d.density_normalised = d.form_factor_normalised * form_factor_norm(kernel, static_cast<double>(fam.X)) /
                         density_norm(kernel, static_cast<double>(fam.X));
  return d;
}

PairingCheck pairing_identity_check(const ZeroFamily& fam, const TestFunction& tf, const KernelSpec& kernel) {
  const FormFactor F(fam, kernel);
  PairingCheck out;
  out.double_sum = F.weighted_sum(tf);
  const double upper = std::isfinite(tf.support) ? tf.support : tf.r_cutoff;
  if (upper > 0.0) {
    double gmax = 1.0;
    for (double g : fam.gammas) gmax = std::max(gmax, g);
    // F oscillates with frequency up to gamma_max log X.
    const double step = std::min(0.05, kPi / (gmax * F.log_x()));
    auto br = breaks(0.0, upper, step);
    quad::Options opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-13;
    out.integral = 2.0 * quad::integrate_pieces([&](double a) { return F(a) * tf.r_hat(a); }, br, opt);
  }
  out.residual = std::abs(out.integral - out.double_sum);
  return out;
}

}  // namespace lowzero
