#include "lowzero/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lowzero/errors.hpp"
#include "lowzero/quadrature.hpp"
#include "lowzero/special.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;

// int_A^inf e^(i w a) a^-n da for w >= 0, n >= 1 (n >= 2 when w = 0).
cplx osc_tail(double A, double w, int n) {
  if (w == 0.0) return std::pow(A, 1 - n) / (n - 1);
  cplx I = expint_e1(cplx(0.0, -w * A));
  for (int k = 2; k <= n; ++k)
    I = std::pow(A, 1 - k) * std::polar(1.0, w * A) / double(k - 1) + cplx(0.0, w / (k - 1)) * I;
  return I;
}

// Fejer r(a) = (1 - cos(b a)) c0 / a^2 with b = 2 pi lambda, c0 = 1/(2 pi^2 lambda^2).
double fejer_sym_tail(double lambda, double A) {
  const double b = 2 * kPi * lambda, d = 2 * kPi, c0 = 1.0 / (2 * kPi * kPi * lambda * lambda);
  const double diff = d - b;
  const double sgn = diff < 0 ? -1.0 : 1.0;
  const double mixed = osc_tail(A, d + b, 3).imag() + sgn * osc_tail(A, std::abs(diff), 3).imag();
  return c0 * (1.0 / A - osc_tail(A, b, 2).real() - osc_tail(A, d, 3).imag() / d + mixed / (2 * d));
}

double fejer_cos_tail(double lambda, double A, double w) {
  const double b = 2 * kPi * lambda, c0 = 1.0 / (2 * kPi * kPi * lambda * lambda);
  return c0 * (osc_tail(A, w, 2).real() - 0.5 * osc_tail(A, w + b, 2).real() -
               0.5 * osc_tail(A, std::abs(w - b), 2).real());
}

std::vector<double> uniform_breaks(double a, double b, double step, const std::vector<double>& extra = {}) {
  std::vector<double> br;
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / step)));
  for (int i = 0; i <= n; ++i) br.push_back(a + (b - a) * i / n);
  for (double e : extra)
    if (e > a && e < b) br.push_back(e);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

// 16 j_2(w) / w^2, the bump transform shape.
double bump_shape(double w) {
  const double aw = std::abs(w);
  if (aw < 1.0) {
    // j_2(w)/w^2 = sum_k (-w^2/2)^k / (k! (2k+5)!!)
    double term = 1.0 / 15.0, sum = term;
    for (int k = 1; k < 14; ++k) {
      term *= -0.5 * w * w / (k * (2.0 * k + 5.0));
      sum += term;
    }
    return 16.0 * sum;
  }
  const double j2 = (3.0 / (aw * aw * aw) - 1.0 / aw) * std::sin(aw) - 3.0 * std::cos(aw) / (aw * aw);
  return 16.0 * j2 / (aw * aw);
}

}  // namespace

double symplectic_density(double x) {
  const double y = 2 * kPi * x;
  if (std::abs(y) < 1e-3) {
    const double y2 = y * y;
    return y2 / 6.0 - y2 * y2 / 120.0;
  }
  return 1.0 - std::sin(y) / y;
}

TestFunction fejer(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("fejer: lambda must be positive");
  TestFunction tf;
  tf.name = "fejer";
  tf.param = lambda;
  tf.r = [lambda](double u) {
    const double y = kPi * lambda * u;
    if (std::abs(y) < 1e-4) return 1.0 - y * y / 3.0;
    const double s = std::sin(y) / y;
    return s * s;
  };
  tf.r_hat = [lambda](double a) { return std::max(lambda - std::abs(a), 0.0) / (lambda * lambda); };
  tf.support = lambda;
  tf.kinks = {lambda};
  tf.r_cutoff = 200.0;
  tf.tail = [lambda](double A) { return fejer_sym_tail(lambda, A); };
  return tf;
}

TestFunction gaussian_tf() {
  TestFunction tf;
  tf.name = "gauss";
  tf.r = [](double u) { return std::exp(-kPi * u * u); };
  tf.r_hat = tf.r;
  tf.r_cutoff = 7.0;
  return tf;
}

TestFunction bump(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("bump: lambda must be positive");
  TestFunction tf;
  tf.name = "bump";
  tf.param = lambda;
  tf.r = [lambda](double u) { return lambda * bump_shape(2 * kPi * lambda * u); };
  tf.r_hat = [lambda](double a) {
    const double q = a / lambda;
    return std::abs(q) < 1.0 ? (1 - q * q) * (1 - q * q) : 0.0;
  };
  tf.support = lambda;
  tf.kinks = {lambda};
  tf.r_cutoff = 400.0;
  return tf;
}

TestFunction zero_tf() {
  TestFunction tf;
  tf.name = "zero";
  tf.r = [](double) { return 0.0; };
  tf.r_hat = tf.r;
  tf.support = 0.0;
  tf.r_cutoff = 1.0;
  return tf;
}

TestFunction sampled_tf(std::string name, std::vector<double> alphas, std::vector<double> rhat_values) {
  if (alphas.size() < 2 || alphas.size() != rhat_values.size() || alphas.front() != 0.0)
    throw DomainError("sampled_tf: need at least two samples starting at alpha = 0");
  if (!std::is_sorted(alphas.begin(), alphas.end())) throw DomainError("sampled_tf: grid must ascend");
  TestFunction tf;
  tf.name = std::move(name);
  tf.closed_forms = false;
  tf.support = alphas.back();
  tf.kinks.assign(alphas.begin() + 1, alphas.end());
  tf.r_cutoff = 2000.0;
  tf.r_hat = [alphas, rhat_values](double a) {
    a = std::abs(a);
    if (a >= alphas.back()) return 0.0;
    const auto it = std::upper_bound(alphas.begin(), alphas.end(), a);
    const std::size_t i = static_cast<std::size_t>(it - alphas.begin()) - 1;
    const double f = (a - alphas[i]) / (alphas[i + 1] - alphas[i]);
    return rhat_values[i] + f * (rhat_values[i + 1] - rhat_values[i]);
  };
  // r(u) = 2 int_0^S r_hat(a) cos(2 pi a u) da, exact for piecewise-linear r_hat.
  tf.r = [alphas, rhat_values](double u) {
    const double k = 2 * kPi * std::abs(u);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
      const double a0 = alphas[i], a1 = alphas[i + 1];
      const double m = (rhat_values[i + 1] - rhat_values[i]) / (a1 - a0);
      const double c = rhat_values[i] - m * a0;
      if (k < 1e-8) {
        sum += c * (a1 - a0) + 0.5 * m * (a1 * a1 - a0 * a0);
      } else {
        auto F = [&](double a) { return (c + m * a) * std::sin(k * a) / k + m * std::cos(k * a) / (k * k); };
        sum += F(a1) - F(a0);
      }
    }
    return 2.0 * sum;
  };
  return tf;
}

TestFunction tf_by_name(const std::string& name, double param) {
  if (name == "fejer") return fejer(param);
  if (name == "gauss") return gaussian_tf();
  if (name == "bump") return bump(param);
  throw DomainError("unknown test function '" + name + "'");
}

double r_from_rhat(const TestFunction& tf, double u) {
  if (!std::isfinite(tf.support)) throw DomainError("r_from_rhat: needs compact support");
  if (tf.support == 0.0) return 0.0;
  const double w = 2 * kPi * u;
  auto br = uniform_breaks(0.0, tf.support, 0.25 / std::max(1.0, std::abs(u)), tf.kinks);
  return 2.0 * quad::integrate_pieces([&](double a) { return tf.r_hat(a) * std::cos(w * a); }, br);
}

double rhat_from_r(const TestFunction& tf, double alpha) {
  const double w = 2 * kPi * alpha;
  const double A = tf.r_cutoff;
  auto br = uniform_breaks(0.0, A, 0.25 / std::max(1.0, std::abs(alpha)));
  double v = quad::integrate_pieces([&](double u) { return tf.r(u) * std::cos(w * u); }, br);
  if (tf.name == "fejer") v += fejer_cos_tail(tf.param, A, std::abs(w));
  return 2.0 * v;
}

LimitDensity limit_density_both(const TestFunction& tf) {
  LimitDensity out;
  const double A = tf.r_cutoff;
  auto br = uniform_breaks(0.0, A, 0.25);
  double phys = quad::integrate_pieces([&](double a) { return tf.r(a) * symplectic_density(a); }, br);
  if (tf.tail) phys += tf.tail(A);
  out.physical = 2.0 * phys;
  const double upper = std::min(1.0, tf.support);
  double side = 0.0;
  if (upper > 0.0) side = quad::integrate_pieces(tf.r_hat, uniform_breaks(0.0, upper, 0.125, tf.kinks));
  out.fourier = tf.r_hat(0.0) - side;
  return out;
}

double limit_density(const TestFunction& tf) { return limit_density_both(tf).physical; }

}  // namespace lowzero
