#include "lowzero/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowzero/errors.hpp"
#include "lowzero/quadrature.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogCut = 18.0 * 2.302585092994045684;  // -log(1e-18)

double best_contour(const KernelSpec& spec, double y) {
  if (spec.kappa <= 0.0) return spec.default_c;
  return std::clamp(0.5 + std::log(y) / (2.0 * spec.kappa), -0.75, 1.75);
}

}  // namespace

void KernelSpec::validate() const {
  if (!K) throw DomainError("kernel " + name + " has no K(s)");
  if (!(default_c > -1.0 && default_c < 2.0)) throw DomainError("kernel contour must lie in (-1, 2)");
  const double k0 = std::abs(K(cplx(0.5, 0.0)));
  if (!(k0 > 0.0) || !std::isfinite(k0)) throw DomainError("kernel " + name + " vanishes at 1/2");
  for (double t = 0.05; t <= 10.0; t += 0.05) {
    const cplx a = K(cplx(0.5, t)), b = K(cplx(0.5, -t));
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
      throw DomainError("kernel " + name + " is not even on the critical line");
  }
}

double MellinPair::a(double y) const {
  if (spec.closed_form_a) return spec.closed_form_a(y);
  return a_numeric(*this, y);
}

KernelSpec gaussian_kernel(double kappa) {
  if (!(kappa > 0.0)) throw DomainError("gaussian kernel needs kappa > 0");
  KernelSpec k;
  k.name = kappa == 1.0 ? "gauss" : (kappa == 2.0 ? "gauss2" : "gauss(" + std::to_string(kappa) + ")");
  k.K = [kappa](cplx s) {
    const cplx d = s - 0.5;
    return std::exp(kappa * d * d);
  };
  k.default_c = 0.5;
  k.closed_form_a = [kappa](double y) { return a_closed_form(y, kappa); };
  k.kappa = kappa;
  k.validate();
  return k;
}

KernelSpec kernel_by_name(const std::string& name) {
  if (name == "gauss") return gaussian_kernel(1.0);
  if (name == "gauss2") return gaussian_kernel(2.0);
  throw DomainError("unknown kernel '" + name + "' (expected gauss or gauss2)");
}

cplx eval_K(const KernelSpec& spec, cplx s) {
  if (!(s.real() > -1.0 && s.real() < 2.0)) throw DomainError("eval_K: Re s outside (-1, 2)");
  return spec.K(s);
}

double truncation_height(const KernelSpec& spec, double c) {
  if (spec.kappa > 0.0) {
    const double d = c - 0.5;
    return std::sqrt(d * d + kLogCut / spec.kappa);
  }
  double t = 1.0;
  for (; t <= 200.0; t *= 1.25) {
    bool small = true;
    for (double u = t; u <= 1.6 * t; u += 0.1 * t)
      if (std::abs(spec.K(cplx(c, u))) >= 1e-18) small = false;
    if (small) return t;
  }
  throw QuadratureError("kernel " + spec.name + " does not reach 1e-18 on its contour");
}

double a_numeric(const MellinPair& pair, double y, double c) {
  if (!(y > 0.0)) throw DomainError("a_numeric: y must be positive");
  if (!(c > -1.0 && c < 2.0)) throw DomainError("a_numeric: contour outside (-1, 2)");
  const double T = truncation_height(pair.spec, c);
  const double ly = std::log(y);
  // The integrand at -t is the conjugate of that at t, so integrate the real part on [0, T].
  auto f = [&](double t) {
    const cplx s(c, t);
    return (pair.spec.K(s) * std::exp(-s * ly)).real();
  };
  const double scale = std::exp(-c * ly) * std::abs(pair.spec.K(cplx(c, 0.0)));
  quad::Options opt{1e-17 * scale, 1e-13, 4000};
  const double half_osc = (std::abs(ly) > 1.0) ? kPi / std::abs(ly) : T;
  std::vector<double> br;
  for (double t = 0.0; t < T; t += std::max(half_osc, T / 64)) br.push_back(t);
  br.push_back(T);
  return quad::integrate_pieces(f, br, opt) / kPi;
}

double a_numeric(const MellinPair& pair, double y) { return a_numeric(pair, y, best_contour(pair.spec, y)); }

double a_closed_form(double y) { return a_closed_form(y, 1.0); }

double a_closed_form(double y, double kappa) {
  if (!(y > 0.0)) throw DomainError("a_closed_form: y must be positive");
  const double ly = std::log(y);
  return std::exp(-0.5 * ly - ly * ly / (4.0 * kappa)) / (2.0 * std::sqrt(kPi * kappa));
}

cplx mellin_recover_K(const MellinPair& pair, cplx s, bool use_numeric) {
  if (!(s.real() > -1.0 && s.real() < 2.0)) throw DomainError("mellin_recover_K: Re s outside (-1, 2)");
  auto a = [&](double y) { return use_numeric ? a_numeric(pair, y) : pair.a(y); };
  // u = log t; the integrand a(e^u) e^(u s) peaks near u = 2 kappa (Re s - 1/2).
  auto f = [&](double u) { return a(std::exp(u)) * std::exp(u * s); };
  const double kappa = pair.spec.kappa > 0.0 ? pair.spec.kappa : 1.0;
  const double peak = 2.0 * kappa * (s.real() - 0.5);
  const double width = std::max(0.5, std::sqrt(2.0 * kappa));
  const double osc = std::abs(s.imag()) > 0.5 ? std::min(width, 3.0 / std::abs(s.imag())) : width;
  quad::Options opt{1e-16, 1e-12, 2000};
  cplx total = 0.0;
  for (int dir : {1, -1}) {
    double u = peak;
    int quiet = 0;
    for (int k = 0; k < 400 && quiet < 2; ++k) {
      const double next = u + dir * osc;
      auto r = quad::integrate(f, std::min(u, next), std::max(u, next), opt);
      if (!r.converged) throw QuadratureError("mellin_recover_K: panel did not converge");
      total += r.value;
      quiet = (std::abs(r.value) < 1e-18 * std::max(1.0, std::abs(total))) ? quiet + 1 : 0;
      u = next;
    }
    if (quiet < 2) throw QuadratureError("mellin_recover_K: integrand did not decay");
  }
  return total;
}

double kbound2_integral(const KernelSpec& spec, double c) {
  const double T = truncation_height(spec, c);
  auto f = [&](double t) { return std::abs(spec.K(cplx(c, t))) * std::log(std::abs(t) + 2.0); };
  const double br[] = {-T, 0.0, T};
  return quad::integrate_pieces(f, br, quad::Options{1e-14, 1e-10, 2000});
}

double abound2_integral(const MellinPair& pair) {
  // u = e^v: int |a'(e^v)| e^(2v) dv
  auto f = [&](double v) {
    const double u = std::exp(v), h = 1e-5 * u;
    const double d = (pair.a(u + h) - pair.a(u - h)) / (2.0 * h);
    return std::abs(d) * u * u;
  };
  std::vector<double> br;
  for (double v = -40.0; v <= 40.0; v += 1.0) br.push_back(v);
  return quad::integrate_pieces(f, br, quad::Options{1e-14, 1e-9, 2000});
}

}  // namespace lowzero
