#pragma once

// Adaptive Gauss-Kronrod (7/15) integration and Chebyshev helpers shared by the
// numerical modules.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <queue>
#include <span>
#include <vector>

#include "lowzero/errors.hpp"

namespace lowzero::quad {

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> kronrod15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const T s = f(c - dx) + f(c + dx);
    kron += s * kKronrodWeights[j];
    if (j % 2 == 1) gauss += s * kGaussWeights[j / 2];
  }
  return {a, b, kron * h, magnitude((kron - gauss) * h)};
}

}  // namespace detail

template <class T>
struct Result {
  T value{};
  double error = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_intervals = 20000;
};

/// Globally adaptive G7/K15 on [a, b]: keeps bisecting the panel with the largest
/// error estimate until the summed estimate meets max(abs_tol, rel_tol*|I|).
template <class F>
auto integrate(F&& f, double a, double b, Options opt = {}) {
  using T = std::decay_t<decltype(f(a))>;
  Result<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel<T>> heap;
  auto first = detail::kronrod15<T>(f, a, b);
  T total = first.value;
  double err = first.error;
  heap.push(first);
  std::size_t count = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
    if (count >= opt.max_intervals) {
      out.value = total;
      out.error = err;
      out.intervals = count;
      return out;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod15<T>(f, worst.a, mid);
    auto right = detail::kronrod15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    count += 1;
    if (err < 0) err = 0;
  }
  // Re-sum from scratch so the returned value does not carry update drift.
  T fresh{};
  double fresh_err = 0;
  while (!heap.empty()) {
    fresh += heap.top().value;
    fresh_err += heap.top().error;
    heap.pop();
  }
  out.value = fresh;
  out.error = fresh_err;
  out.intervals = count;
  out.converged = true;
  return out;
}

/// integrate() over consecutive breakpoints; throws QuadratureError on non-convergence.
template <class F>
auto integrate_pieces(F&& f, std::span<const double> breaks, Options opt = {}) {
  using T = std::decay_t<decltype(f(breaks[0]))>;
  T total{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto r = integrate(f, breaks[i], breaks[i + 1], opt);
    if (!r.converged) throw QuadratureError("adaptive quadrature did not converge");
    total += r.value;
  }
  return total;
}

template <class F>
auto integrate_or_throw(F&& f, double a, double b, Options opt = {}) {
  const double br[2] = {a, b};
  return integrate_pieces(std::forward<F>(f), std::span<const double>(br, 2), opt);
}

/// Chebyshev-Lobatto points x_j = cos(pi j / m), j = 0..m, mapped to [a, b] ascending.
inline std::vector<double> lobatto_nodes(double a, double b, int m) {
  std::vector<double> t(m + 1);
  for (int j = 0; j <= m; ++j) t[j] = a + (b - a) * 0.5 * (1.0 - std::cos(std::numbers::pi * j / m));
  return t;
}

/// Chebyshev coefficients from values at ascending Lobatto nodes (DCT-I, O(m^2)).
inline std::vector<double> lobatto_coefficients(std::span<const double> values) {
  const int m = static_cast<int>(values.size()) - 1;
  std::vector<double> c(m + 1, 0.0);
  // Ascending nodes correspond to x = -cos(pi j/m); flip sign of odd coefficients.
  for (int k = 0; k <= m; ++k) {
    double s = 0;
    for (int j = 0; j <= m; ++j) {
      double w = (j == 0 || j == m) ? 0.5 : 1.0;
      s += w * values[j] * std::cos(std::numbers::pi * k * j / m);
    }
    s *= 2.0 / m;
    if (k == 0 || k == m) s *= 0.5;
    c[k] = (k % 2 == 1) ? -s : s;
  }
  return c;
}

/// Clenshaw evaluation of sum c_k T_k(x) for x in [-1, 1].
inline double clenshaw(std::span<const double> c, double x) {
  double b1 = 0, b2 = 0;
  for (std::size_t k = c.size(); k-- > 1;) {
    double b0 = 2 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace lowzero::quad
