#include "lowzero/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "lowzero/errors.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_step(const QuadChar& chi, double T) {
  const double density = std::log(static_cast<double>(chi.p) * std::max(T, 1.0) / (2.0 * kPi));
  return std::min(0.1, (2.0 * kPi / std::max(1.0, density)) / 8.0);
}

}  // namespace

double bracket_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                    double tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iters = 200;
  auto stop = [tol](double lo, double hi) { return std::abs(hi - lo) < tol; };
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
  return 0.5 * (r.first + r.second);
}

double tracked_arg(const std::function<cplx(double)>& eval, double sigma_from, double sigma_to) {
  double sigma = sigma_from;
  cplx L = eval(sigma);
  double arg = std::arg(L);
  double step = 0.1;
  while (sigma > sigma_to) {
    const double next = std::max(sigma_to, sigma - step);
    const cplx Ln = eval(next);
    if (std::abs(Ln) < 1e-300) throw WindingNumberError("L vanishes on the counting contour");
    const double d = std::arg(Ln / L);
    if (std::abs(d) > 0.4 && step > 1e-9) {
      step *= 0.5;
      continue;
    }
    arg += d;
    sigma = next;
    L = Ln;
    step = std::min(step * 1.5, 0.1);
  }
  return arg;
}

double count_zeros_raw(const QuadChar& chi, double T, const LOptions& opt) {
  if (!(T > kCountDelta)) return 0.0;
  auto side = [&](double t) {
    const double A = tracked_arg([&](double sigma) { return eval_L(chi, cplx(sigma, t), opt); });
    return hardy_theta(chi, t) + A;
  };
  return (side(T) - side(kCountDelta)) / kPi;
}

long count_zeros(const QuadChar& chi, double T, const LOptions& opt) {
  if (!(T > 0.0) || T > opt.t_max) throw DomainError("count_zeros: T outside (0, t_max]");
  const double raw = count_zeros_raw(chi, T, opt);
  const double n = std::nearbyint(raw);
  if (std::abs(raw - n) > 0.2 || n < 0)
    throw WindingNumberError("winding value " + std::to_string(raw) + " is not near an integer for p=" +
                             std::to_string(chi.p));
  return static_cast<long>(n);
}

double smooth_count(const QuadChar& chi, double T) {
  if (!(T > 0.0)) throw DomainError("smooth_count: T must be positive");
  return T / (2.0 * kPi) * std::log(static_cast<double>(chi.p) * T / (2.0 * kPi * std::numbers::e));
}

ZeroList find_zeros(const QuadChar& chi, double T, const ZeroOptions& opt) {
  if (!(T > 0.0) || T > opt.eval.t_max) throw DomainError("find_zeros: T outside (0, t_max]");
  ZeroList out;
  out.p = chi.p;
  out.T = T;
  auto Z = [&](double t) { return hardy_Z(chi, t, opt.eval); };
  const double z0 = Z(0.0);
  out.central_flag = std::abs(z0) < tol_zero(chi.p);
  try {
    out.ap_count = count_zeros(chi, T, opt.eval);
  } catch (const WindingNumberError&) {
    out.ap_count = -1;
  }

  const double h0 = grid_step(chi, T);
  for (int attempt = 0; attempt <= opt.refinements; ++attempt) {
    const double h = h0 / std::pow(2.0, attempt);
    const auto steps = static_cast<std::size_t>(std::ceil(T / h));
    std::vector<double> ts(steps + 1), zs(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
      ts[k] = T * static_cast<double>(k) / static_cast<double>(steps);
      zs[k] = k == 0 ? z0 : Z(ts[k]);
    }
    std::vector<double> roots, evens;
    for (std::size_t k = 0; k < steps; ++k) {
      double a = ts[k], b = ts[k + 1], fa = zs[k], fb = zs[k + 1];
      if (k == 0 && fa == 0.0) continue;  // central point, not a positive ordinate
      if (fb == 0.0 && k + 1 < steps) continue;  // picked up from the next interval
      if (fa == 0.0 || fa * fb < 0.0 || fb == 0.0) roots.push_back(bracket_root(Z, a, b, fa, fb, opt.root_tol));
    }
    // Touching zeros: |Z| dips with the same sign on both sides.
    for (std::size_t k = 1; k < steps; ++k) {
      if (zs[k - 1] * zs[k] <= 0.0 || zs[k] * zs[k + 1] <= 0.0) continue;
      if (std::abs(zs[k]) > std::abs(zs[k - 1]) || std::abs(zs[k]) > std::abs(zs[k + 1])) continue;
      if (std::abs(zs[k]) > 1e-3) continue;
      auto m = boost::math::tools::brent_find_minima([&](double t) { return std::abs(Z(t)); }, ts[k - 1],
                                                     ts[k + 1], 40);
      if (m.second < 1e-8) evens.push_back(m.first);
    }
    out.gammas = roots;
    out.even_order = evens;
    const long found = static_cast<long>(roots.size());
    const long with_evens = found + 2 * static_cast<long>(evens.size());
    if (out.ap_count >= 0 && found == out.ap_count) {
      out.certified = true;
      out.even_order.clear();
      break;
    }
    if (out.ap_count >= 0 && !evens.empty() && with_evens == out.ap_count) {
      out.gammas.insert(out.gammas.end(), evens.begin(), evens.end());
      std::sort(out.gammas.begin(), out.gammas.end());
      out.certified = true;
      break;
    }
  }
  std::sort(out.gammas.begin(), out.gammas.end());
  return out;
}

}  // namespace lowzero
