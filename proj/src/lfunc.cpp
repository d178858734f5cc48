#include "lowzero/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowzero/errors.hpp"
#include "lowzero/numth.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;
// Terms with x cos(phi) beyond this are below 1e-17 of the leading ones.
constexpr double kExpCut = 40.0;

// Angle for the reflected half of the self-check; differs from rotation_angle at every t.
double alternate_angle(double t) {
  const double sg = t < 0.0 ? -1.0 : 1.0;
  const double at = std::abs(t);
  return sg * std::max(0.1, kPi / 2 - 7.0 / std::max(at, 1e-300));
}

struct HalfSum {
  cplx w;
  cplx expo;  // x^expo multiplies Gamma(w, x * rot)
  cplx rot;
  bool use_gamma;
  cplx gamma_w;

  HalfSum(cplx w_, cplx expo_, cplx rot_) : w(w_), expo(expo_), rot(rot_) {
    use_gamma = std::abs(w) >= 0.5 && w.real() >= -0.5;
    if (use_gamma) gamma_w = std::exp(log_gamma(w));
  }

  cplx term(double x, double logx) const {
    const cplx z = x * rot;
    const cplx g = use_gamma ? upper_incomplete_gamma(w, z, gamma_w) : upper_incomplete_gamma(w, z);
    return std::exp(expo * logx) * g;
  }
};

std::uint64_t term_count(const QuadChar& chi, double phi, const LOptions& opt) {
  const double xcut = kExpCut / std::cos(phi);
  const double N = std::floor(std::sqrt(static_cast<double>(chi.p) * xcut / kPi)) + 1.0;
  if (N > static_cast<double>(opt.term_budget))
    throw TruncationBudgetExceeded("smoothed sum needs " + std::to_string(static_cast<std::uint64_t>(N)) +
                                   " terms for p=" + std::to_string(chi.p));
  return static_cast<std::uint64_t>(N);
}

void check_domain(cplx s, const LOptions& opt) {
  if (s.real() < -1.0 || s.real() > 2.0) throw DomainError("L evaluation: Re s outside [-1, 2]");
  if (std::abs(s.imag()) > opt.t_max) throw DomainError("L evaluation: |Im s| exceeds t_max");
}

// Sum of both halves; with only_first the second half is skipped (it equals the
// conjugate of the first on the critical line).
cplx lambda_sums(const QuadChar& chi, cplx s, double phi, const LOptions& opt, bool only_first) {
  const cplx rot = std::polar(1.0, phi);
  const double a = chi.a;
  HalfSum first((s + a) / 2.0, -s / 2.0, rot);
  HalfSum second((1.0 - s + a) / 2.0, -(1.0 - s) / 2.0, std::conj(rot));
  const std::uint64_t N = term_count(chi, phi, opt);
  const double scale = kPi / static_cast<double>(chi.p);
  cplx s1 = 0.0, s2 = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const int c = jacobi(static_cast<std::int64_t>(n), chi.p);
    if (c == 0) continue;
    const double x = scale * static_cast<double>(n) * static_cast<double>(n);
    const double lx = std::log(x);
    const cplx t1 = first.term(x, lx);
    s1 += c > 0 ? t1 : -t1;
    if (!only_first) {
      const cplx t2 = second.term(x, lx);
      s2 += c > 0 ? t2 : -t2;
    }
  }
  const double pref = std::pow(static_cast<double>(chi.p) / kPi, a / 2.0);
  if (only_first) return pref * 2.0 * s1.real();
  return pref * (s1 + s2);
}

}  // namespace

QuadChar::QuadChar(std::uint64_t prime) : p(prime) {
  if (prime < 3 || prime % 2 == 0) throw DomainError("QuadChar: p must be an odd prime");
  v = static_cast<int>(prime % 4);
  a = v == 1 ? 0 : 1;
}

int QuadChar::operator()(std::int64_t n) const { return jacobi(n, p); }

double rotation_angle(double t) {
  const double sg = t < 0.0 ? -1.0 : 1.0;
  const double at = std::abs(t);
  return sg * std::max(0.2, kPi / 2 - 4.0 / std::max(at, 1e-300));
}

cplx completed_lambda(const QuadChar& chi, cplx s, double phi, const LOptions& opt) {
  check_domain(s, opt);
  if (!(std::abs(phi) < kPi / 2)) throw DomainError("completed_lambda: |phi| must be below pi/2");
  return lambda_sums(chi, s, phi, opt, false);
}

cplx gamma_factor(const QuadChar& chi, cplx s) {
  const cplx w = (s + static_cast<double>(chi.a)) / 2.0;
  return std::exp(w * std::log(static_cast<double>(chi.p) / kPi) + log_gamma(w));
}

CompletedValue eval_completed(const QuadChar& chi, cplx s, const LOptions& opt) {
  check_domain(s, opt);
  CompletedValue out;
  out.s = s;
  out.lambda = lambda_sums(chi, s, rotation_angle(s.imag()), opt, false);
  const cplx reflected = lambda_sums(chi, 1.0 - s, alternate_angle(-s.imag()), opt, false);
  const double diff = std::abs(out.lambda - reflected);
  out.fe_residual = diff / std::max(std::abs(out.lambda), 1e-300);
  const cplx gf = gamma_factor(chi, s);
  out.l = out.lambda / gf;
  if (opt.self_check) {
    // Near a zero of Lambda the relative residual is meaningless; compare against the
    // size Lambda would have with |L| around 1e-2 instead.
    const double floor = 1e-2 * std::max(std::abs(gf), std::abs(gamma_factor(chi, 1.0 - s)));
    if (diff > 1e-8 * std::max(std::abs(out.lambda), floor))
      throw SelfCheckError("functional equation residual " + std::to_string(out.fe_residual) + " at p=" +
                           std::to_string(chi.p));
  }
  return out;
}

double central_value(const QuadChar& chi, const LOptions& opt) {
  const double lam = lambda_sums(chi, cplx(0.5, 0.0), rotation_angle(0.0), opt, true).real();
  return lam / gamma_factor(chi, cplx(0.5, 0.0)).real();
}

double hardy_theta(const QuadChar& chi, double t) {
  const cplx w(0.25 + 0.5 * chi.a, 0.5 * t);
  return 0.5 * t * std::log(static_cast<double>(chi.p) / kPi) + log_gamma(w).imag();
}

double hardy_Z(const QuadChar& chi, double t, const LOptions& opt) {
  const cplx s(0.5, t);
  check_domain(s, opt);
  const double lam = lambda_sums(chi, s, rotation_angle(t), opt, true).real();
  const cplx w = (s + static_cast<double>(chi.a)) / 2.0;
  const double mod = std::exp(w.real() * std::log(static_cast<double>(chi.p) / kPi) + log_gamma(w).real());
  return lam / mod;
}

cplx hardy_Z_complex(const QuadChar& chi, double t, const LOptions& opt) {
  const cplx s(0.5, t);
  check_domain(s, opt);
  const cplx lam = lambda_sums(chi, s, rotation_angle(t), opt, false);
  return lam / std::abs(gamma_factor(chi, s));
}

double tol_zero(std::uint64_t p) { return 1e-8 * std::pow(static_cast<double>(p) / kPi, 0.25); }

cplx dirichlet_partial(const QuadChar& chi, cplx s, std::uint64_t N) {
  cplx acc = 0.0;
  for (std::uint64_t n = N; n >= 1; --n) {
    const int c = jacobi(static_cast<std::int64_t>(n), chi.p);
    if (c != 0) acc += static_cast<double>(c) * std::exp(-s * std::log(static_cast<double>(n)));
  }
  return acc;
}

cplx eval_L(const QuadChar& chi, cplx s, const LOptions& opt) {
  check_domain(s, opt);
  return lambda_sums(chi, s, rotation_angle(s.imag()), opt, false) / gamma_factor(chi, s);
}

}  // namespace lowzero
