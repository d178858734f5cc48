#include "lowzero/family.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "lowzero/errors.hpp"
#include "lowzero/numth.hpp"
#include "lowzero/parallel.hpp"
#include "lowzero/quadrature.hpp"

namespace lowzero {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExpCut = 40.0;
constexpr int kResync = 64;

std::vector<cplx> complex_coefficients(const std::vector<cplx>& v) {
  std::vector<double> re(v.size()), im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  auto cr = quad::lobatto_coefficients(re);
  auto ci = quad::lobatto_coefficients(im);
  std::vector<cplx> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = {cr[i], ci[i]};
  return c;
}

cplx clenshaw_c(const std::vector<cplx>& c, double x) {
  cplx b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    cplx b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

// arg of the interpolated L carried from sigma = 2 down to 1/2; NaN when a step is too
// large to trust or L gets too small.
double interpolated_arg(const std::vector<cplx>& coef) {
  constexpr int kSamples = 256;
  // Ascending Lobatto nodes on [1/2, 2] map to x in [-1, 1].
  cplx prev = clenshaw_c(coef, 1.0);
  if (!(prev.real() > 0.0)) return std::nan("");
  double arg = std::arg(prev);
  for (int i = 1; i <= kSamples; ++i) {
    const cplx cur = clenshaw_c(coef, 1.0 - 2.0 * i / kSamples);
    if (std::abs(cur) < 1e-6) return std::nan("");
    const double d = std::arg(cur / prev);
    if (std::abs(d) > 1.2) return std::nan("");
    arg += d;
    prev = cur;
  }
  return arg;
}

}  // namespace

FamilyEvaluator::FamilyEvaluator(int parity, std::uint64_t p_max, double T, FamilyOptions opt)
    : parity_(parity), p_max_(p_max), T_(T), opt_(opt) {
  if (parity != 0 && parity != 1) throw DomainError("FamilyEvaluator: parity must be 0 or 1");
  if (p_max < 3) throw DomainError("FamilyEvaluator: p_max must be at least 3");
  if (!(T > kCountDelta) || T > opt_.fallback.eval.t_max)
    throw DomainError("FamilyEvaluator: T outside (delta, t_max]");

  const double density = 0.5 * std::log(std::max(static_cast<double>(p_max) * T / (2.0 * kPi), std::numbers::e));
  const int m = static_cast<int>(std::ceil(1.5 * density * T / 2.0 + 40.0));
  t_nodes_ = quad::lobatto_nodes(0.0, T, m);
  for (double t : t_nodes_) add_channel(cplx(0.5, t), rotation_angle(t), false);
  sigma_nodes_ = quad::lobatto_nodes(0.5, 2.0, opt_.segment_nodes - 1);
  for (double height : {kCountDelta, T}) {
    for (double sg : sigma_nodes_) {
      add_channel(cplx(sg, height), rotation_angle(height), false);
      add_channel(cplx(sg, height), rotation_angle(height), true);
    }
  }

  order_.resize(channels_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return channels_[a].xcut > channels_[b].xcut; });

  double h = opt_.panel_width;
  for (int attempt = 0; attempt < 5; ++attempt, h *= 0.5)
    if (build_tables(h)) return;
  throw std::runtime_error("FamilyEvaluator: table tails do not converge");
}

void FamilyEvaluator::add_channel(cplx s, double phi, bool second) {
  Channel c;
  const double a = parity_;
  if (!second) {
    c.w = (s + a) / 2.0;
    c.expo = -s / 2.0;
    c.rot = std::polar(1.0, phi);
  } else {
    c.w = (1.0 - s + a) / 2.0;
    c.expo = -(1.0 - s) / 2.0;
    c.rot = std::polar(1.0, -phi);
  }
  c.use_gamma = std::abs(c.w) >= 0.5 && c.w.real() >= -0.5;
  if (c.use_gamma) c.gamma_w = std::exp(log_gamma(c.w));
  c.xcut = kExpCut / std::cos(phi);
  channels_.push_back(c);
}

bool FamilyEvaluator::build_tables(double h) {
  const int D = opt_.panel_degree;
  const std::size_t C = channels_.size();
  u0_ = std::log(kPi / static_cast<double>(p_max_)) - 1e-9;
  const double u_end = std::log(channels_[order_.front()].xcut) + 1e-9;
  h_ = h;
  panels_ = static_cast<std::size_t>(std::ceil((u_end - u0_) / h));
  coef_.assign(panels_ * C * (D + 1), cplx(0.0));
  const auto local = quad::lobatto_nodes(-1.0, 1.0, D);
  std::vector<cplx> samples(D + 1);
  std::vector<double> re(D + 1), im(D + 1);
  for (std::size_t r = 0; r < C; ++r) {
    const Channel& ch = channels_[order_[r]];
    const double ucut = std::log(ch.xcut);
    for (std::size_t i = 0; i < panels_; ++i) {
      const double ua = u0_ + static_cast<double>(i) * h;
      if (ua > ucut) break;
      for (int k = 0; k <= D; ++k) {
        const double u = ua + 0.5 * h * (local[k] + 1.0);
        const double x = std::exp(u);
        const cplx z = x * ch.rot;
        const cplx g = ch.use_gamma ? upper_incomplete_gamma(ch.w, z, ch.gamma_w) : upper_incomplete_gamma(ch.w, z);
        samples[k] = std::exp(z + ch.expo * u) * g;
        re[k] = samples[k].real();
        im[k] = samples[k].imag();
      }
      auto cr = quad::lobatto_coefficients(re);
      auto ci = quad::lobatto_coefficients(im);
      double head = 0.0, tail = 0.0;
      for (int k = 0; k <= D; ++k) {
        const double mag = std::hypot(cr[k], ci[k]);
        if (k >= D - 1)
          tail = std::max(tail, mag);
        else
          head = std::max(head, mag);
      }
      if (tail > 1e-13 * head) return false;
      cplx* dst = &coef_[(i * C + r) * (D + 1)];
      for (int k = 0; k <= D; ++k) dst[k] = {cr[k], ci[k]};
    }
  }
  return true;
}

void FamilyEvaluator::accumulate(const QuadChar& chi, std::vector<cplx>& sums) const {
  if (chi.a != parity_ || chi.p > p_max_) throw DomainError("FamilyEvaluator: character outside the family");
  const int D = opt_.panel_degree;
  const std::size_t C = channels_.size();
  const double p = static_cast<double>(chi.p);
  std::vector<std::uint64_t> ncut(C);
  std::vector<cplx> q(C), E(C), R(C), Q(C), acc(C, cplx(0.0));
  for (std::size_t r = 0; r < C; ++r) {
    const Channel& ch = channels_[order_[r]];
    ncut[r] = static_cast<std::uint64_t>(std::floor(std::sqrt(p * ch.xcut / kPi))) + 1;
    q[r] = kPi * ch.rot / p;
    Q[r] = std::exp(-2.0 * q[r]);
  }
  const std::uint64_t N = ncut.front();
  std::size_t active = C;
  std::vector<double> Tk(D + 1);
  for (std::uint64_t n = 1; n <= N; ++n) {
    while (active > 0 && ncut[active - 1] < n) --active;
    const double dn = static_cast<double>(n);
    if ((n - 1) % kResync == 0) {
      for (std::size_t r = 0; r < active; ++r) {
        E[r] = std::exp(-q[r] * (dn * dn));
        R[r] = std::exp(-q[r] * (2.0 * dn + 1.0));
      }
    }
    const int c = jacobi(static_cast<std::int64_t>(n), chi.p);
    if (c != 0) {
      const double u = std::log(kPi * dn * dn / p);
      const double xi = (u - u0_) / h_;
      const auto panel = std::min(static_cast<std::size_t>(xi), panels_ - 1);
      const double y = 2.0 * (xi - static_cast<double>(panel)) - 1.0;
      Tk[0] = 1.0;
      Tk[1] = y;
      for (int k = 2; k <= D; ++k) Tk[k] = 2.0 * y * Tk[k - 1] - Tk[k - 2];
      const cplx* base = &coef_[panel * C * (D + 1)];
      for (std::size_t r = 0; r < active; ++r) {
        const cplx* cf = base + r * (D + 1);
        double vr = 0.0, vi = 0.0;
        for (int k = 0; k <= D; ++k) {
          vr += cf[k].real() * Tk[k];
          vi += cf[k].imag() * Tk[k];
        }
        const cplx term = cplx(vr, vi) * E[r];
        if (c > 0)
          acc[r] += term;
        else
          acc[r] -= term;
      }
    }
    for (std::size_t r = 0; r < active; ++r) {
      E[r] *= R[r];
      R[r] *= Q[r];
    }
  }
  sums.assign(C, cplx(0.0));
  for (std::size_t r = 0; r < C; ++r) sums[order_[r]] = acc[r];
}

std::vector<double> FamilyEvaluator::z_values(const QuadChar& chi) const {
  std::vector<cplx> sums;
  accumulate(chi, sums);
  const double lp = std::log(static_cast<double>(chi.p) / kPi);
  std::vector<double> z(t_nodes_.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double lg = log_gamma(channels_[j].w).real();
    z[j] = 2.0 * sums[j].real() * std::exp(-0.25 * lp - lg);
  }
  return z;
}

std::vector<cplx> FamilyEvaluator::segment_values(const QuadChar& chi, bool top) const {
  std::vector<cplx> sums;
  accumulate(chi, sums);
  const std::size_t S = sigma_nodes_.size();
  const std::size_t base = t_nodes_.size() + (top ? 2 * S : 0);
  const double lp = std::log(static_cast<double>(chi.p) / kPi);
  std::vector<cplx> out(S);
  for (std::size_t k = 0; k < S; ++k) {
    const Channel& first = channels_[base + 2 * k];
    out[k] = (sums[base + 2 * k] + sums[base + 2 * k + 1]) *
             std::exp((0.5 * parity_ - first.w) * lp - log_gamma(first.w));
  }
  return out;
}

ZeroList FamilyEvaluator::zeros(const QuadChar& chi) const {
  std::vector<cplx> sums;
  accumulate(chi, sums);
  const double lp = std::log(static_cast<double>(chi.p) / kPi);
  const std::size_t M = t_nodes_.size();
  const std::size_t S = sigma_nodes_.size();

  auto fallback = [&] {
    fallbacks_.fetch_add(1);
    return find_zeros(chi, T_, opt_.fallback);
  };

  std::vector<double> z(M);
  double zmax = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    z[j] = 2.0 * sums[j].real() * std::exp(-0.25 * lp - log_gamma(channels_[j].w).real());
    zmax = std::max(zmax, std::abs(z[j]));
  }
  const auto zc = quad::lobatto_coefficients(z);
  double tail = 0.0;
  for (std::size_t k = M - 8; k < M; ++k) tail = std::max(tail, std::abs(zc[k]));
  if (tail > opt_.z_tail_tol * std::max(1.0, zmax)) return fallback();

  double winding = 0.0;
  for (int side = 0; side < 2; ++side) {
    const std::size_t base = M + side * 2 * S;
    std::vector<cplx> L(S);
    for (std::size_t k = 0; k < S; ++k) {
      const Channel& first = channels_[base + 2 * k];
      L[k] = (sums[base + 2 * k] + sums[base + 2 * k + 1]) *
             std::exp((0.5 * parity_ - first.w) * lp - log_gamma(first.w));
    }
    const auto lc = complex_coefficients(L);
    double lmax = 0.0, ltail = 0.0;
    for (std::size_t k = 0; k < S; ++k) {
      if (k + 4 >= S)
        ltail = std::max(ltail, std::abs(lc[k]));
      else
        lmax = std::max(lmax, std::abs(lc[k]));
    }
    if (ltail > 1e-10 * lmax) return fallback();
    const double A = interpolated_arg(lc);
    if (std::isnan(A)) return fallback();
    const double height = side == 0 ? kCountDelta : T_;
    winding += (side == 0 ? -1.0 : 1.0) * (hardy_theta(chi, height) + A);
  }
  winding /= kPi;
  const double ap = std::nearbyint(winding);
  if (std::abs(winding - ap) > 0.2 || ap < 0) return fallback();

  auto Z = [&](double t) { return quad::clenshaw(zc, 2.0 * t / T_ - 1.0); };
  const double step = std::min(0.025, T_ / 400.0);
  const auto steps = static_cast<std::size_t>(std::ceil(T_ / step));
  std::vector<double> ts(steps + 1), zs(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    ts[k] = T_ * static_cast<double>(k) / static_cast<double>(steps);
    zs[k] = Z(ts[k]);
  }
  ZeroList out;
  out.p = chi.p;
  out.T = T_;
  out.central_flag = std::abs(z.front()) < tol_zero(chi.p);
  const double touch = 1e-4 * std::max(1.0, zmax);
  for (std::size_t k = 0; k < steps; ++k) {
    if (zs[k] == 0.0 || zs[k] * zs[k + 1] < 0.0) {
      if (ts[k] == 0.0 && zs[k] == 0.0) return fallback();
      const double g = bracket_root(Z, ts[k], ts[k + 1], zs[k], zs[k + 1], 1e-12);
      if (g <= kCountDelta) return fallback();
      out.gammas.push_back(g);
    }
    if (k > 0 && zs[k - 1] * zs[k] > 0.0 && zs[k] * zs[k + 1] > 0.0 && std::abs(zs[k]) < touch &&
        std::abs(zs[k]) <= std::abs(zs[k - 1]) && std::abs(zs[k]) <= std::abs(zs[k + 1]))
      return fallback();
  }
  if (static_cast<double>(out.gammas.size()) != ap) return fallback();
  out.certified = true;
  out.ap_count = static_cast<long>(ap);
  bulk_.fetch_add(1);
  return out;
}

std::vector<ZeroList> find_zeros_family(std::span<const std::uint64_t> primes, double T, unsigned threads,
                                        const FamilyOptions& opt) {
  // Table construction only pays off for a decent number of characters.
  constexpr std::size_t kMinBulk = 16;
  std::uint64_t pmax[2] = {0, 0};
  std::size_t count[2] = {0, 0};
  for (auto p : primes) {
    const int a = QuadChar(p).a;
    pmax[a] = std::max(pmax[a], p);
    ++count[a];
  }
  std::unique_ptr<FamilyEvaluator> ev[2];
  for (int a = 0; a < 2; ++a)
    if (count[a] >= kMinBulk) ev[a] = std::make_unique<FamilyEvaluator>(a, pmax[a], T, opt);
  std::vector<ZeroList> out(primes.size());
  parallel_for(primes.size(), threads, [&](std::size_t i) {
    const QuadChar chi(primes[i]);
    try {
      out[i] = ev[chi.a] ? ev[chi.a]->zeros(chi) : find_zeros(chi, T, opt.fallback);
    } catch (const std::runtime_error&) {
      out[i] = ZeroList{};
      out[i].p = chi.p;
      out[i].T = T;
    }
  });
  return out;
}

}  // namespace lowzero
