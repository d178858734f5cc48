// Acceptance run: one PASS/FAIL line per criterion, tolerances and time budgets below.
// Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lowzero/density.hpp"
#include "lowzero/kernel.hpp"
#include "lowzero/lfunc.hpp"
#include "lowzero/nonvanish.hpp"
#include "lowzero/numth.hpp"
#include "lowzero/parallel.hpp"
#include "lowzero/ratios.hpp"
#include "lowzero/testfn.hpp"
#include "lowzero/zero_cache.hpp"
#include "lowzero/zeros.hpp"

using namespace lowzero;

namespace tol {
constexpr double kernel_pair_rel = 1e-9;
constexpr double self_dual = 1e-12;
constexpr double mellin_round_trip = 1e-7;
constexpr double mellin_half = 1e-8;
constexpr double fe_residual = 1e-8;
constexpr double dirichlet = 1e-9;
constexpr double explicit_const = 1.0;
constexpr double slope_lo = -0.8, slope_hi = -0.2;
constexpr double ff_last = 0.3;
constexpr double ff_slack = 1.2;
constexpr double pairing = 1e-6;
constexpr double density_cross = 0.05;
constexpr double density_limit = 0.15;
constexpr double euler = 1e-3;
constexpr double integrand_identity = 1e-12;
constexpr double fused_naive = 1e-6;
constexpr double log_deriv_rel = 0.05;
constexpr double nonzero_share = 0.75;
constexpr double fejer_agree = 1e-6;
constexpr double char_sum_const = 3.0;
}  // namespace tol

namespace {

constexpr double kT = kDefaultZeroHeight;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Context {
  ZeroCache cache;
  unsigned threads;
};

// --- criteria ---------------------------------------------------------------

Outcome ac1(const Context&) {
  const MellinPair pair{gaussian_kernel()};
  double rel = 0, dual = 0;
  for (int i = 0; i <= 48; ++i) {
    const double y = std::pow(10.0, -3.0 + 6.0 * i / 48.0);
    const double c = a_closed_form(y);
    rel = std::max(rel, std::abs(a_numeric(pair, y) - c) / c);
    dual = std::max(dual, std::abs(a_closed_form(1.0 / y) - y * c) / std::max(1.0, y * c));
  }
  return {rel < tol::kernel_pair_rel && dual < tol::self_dual,
          fmt("max rel |a_num - a_closed| = %.2e, self-duality = %.2e", rel, dual)};
}

Outcome ac2(const Context&) {
  const MellinPair pair{gaussian_kernel()};
  double worst = 0;
  for (double x : {-0.5, 0.0, 0.5, 1.0, 1.5})
    for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const cplx s(x, y);
      worst = std::max(worst, std::abs(mellin_recover_K(pair, s, true) - eval_K(pair.spec, s)));
    }
  const double half = std::abs(mellin_half_identity(pair.spec) - pair.spec.at_half());
  return {worst < tol::mellin_round_trip && half < tol::mellin_half,
          fmt("round trip max err = %.2e, half identity err = %.2e", worst, half)};
}

Outcome ac3(const Context&) {
  std::mt19937_64 rng(20240601);
  const auto primes = primes_up_to(10000);
  std::uniform_int_distribution<std::size_t> pick(1, primes.size() - 1);
  std::uniform_real_distribution<double> sig(-1.0, 2.0), height(-30.0, 30.0);
  double fe = 0;
  for (int i = 0; i < 200; ++i) {
    const QuadChar c(primes[pick(rng)]);
    fe = std::max(fe, eval_completed(c, cplx(sig(rng), height(rng))).fe_residual);
  }
  double ds = 0;
  for (int i = 0; i < 50; ++i) {
    const QuadChar c(primes[pick(rng)]);
    const cplx s(2.0, height(rng));
    ds = std::max(ds, std::abs(eval_L(c, s) - dirichlet_partial(c, s, 1000000)));
  }
  return {fe < tol::fe_residual && ds < tol::dirichlet,
          fmt("max functional-equation residual = %.2e (200 pts), Dirichlet series err = %.2e (50 primes)", fe, ds)};
}

Outcome ac4(const Context& ctx) {
  auto odd = primes_up_to(1000);
  odd.erase(odd.begin());
  std::vector<std::uint64_t> ps;
  for (std::size_t i = 0; i < odd.size() && ps.size() < 50; i += 3) ps.push_back(odd[i]);
  std::vector<long> found(ps.size()), counted(ps.size());
  std::vector<char> certified(ps.size());
  parallel_for(ps.size(), ctx.threads, [&](std::size_t i) {
    const QuadChar c(ps[i]);
    const auto z = find_zeros(c, 20.0);
    found[i] = static_cast<long>(z.gammas.size() + z.even_order.size());
    counted[i] = count_zeros(c, 20.0);
    certified[i] = z.certified;
  });
  int mismatches = 0;
  long total = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (found[i] != counted[i] || !certified[i]) ++mismatches;
    total += counted[i];
  }
  return {mismatches == 0 && ps.size() == 50,
          fmt("%zu primes, %ld zeros up to T=20, %d mismatches", ps.size(), total, mismatches)};
}

Outcome ac5(const Context&) {
  const MellinPair pair{gaussian_kernel()};
  const std::vector<double> xs = {4, 16, 64, 256};
  bool ok = true;
  std::ostringstream os;
  double worst_const = 0, worst_exact = 0;
  for (std::uint64_t p : {101, 103, 997}) {
    const QuadChar chi(p);
    const auto z = find_zeros(chi, kT);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    os << " p=" << p << ":";
    for (double x : xs) {
      const auto e = explicit_formula_sides(chi, x, pair, z);
      worst_const = std::max(worst_const, e.constant);
      worst_exact = std::max(worst_exact, e.exact_residual);
      if (e.residual >= tol::explicit_const / std::sqrt(x)) ok = false;
      const double lx = std::log(x), ly = std::log(e.residual);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
      os << fmt(" C(%g)=%.3f", x, e.constant);
    }
    const double n = static_cast<double>(xs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (!(slope >= tol::slope_lo && slope <= tol::slope_hi)) ok = false;
    os << fmt(" slope=%.3f;", slope);
  }
  return {ok, fmt("max constant = %.3f (need < %.1f), residual with all terms kept <= %.1e;", worst_const,
                  tol::explicit_const, worst_exact) + os.str()};
}

Outcome ac6(const Context& ctx) {
  const auto kernel = gaussian_kernel();
  const MellinPair pair{kernel};
  std::vector<double> gaps;
  std::ostringstream os;
  for (std::uint64_t X : {2000, 20000, 200000}) {
    const auto fam = ZeroFamily::from_cache(ctx.cache, X, 1, kT);
    const double F = FormFactor(fam, kernel)(0.5);
    const double pred = form_factor_prediction(static_cast<double>(X), 0.5, pair);
    gaps.push_back(std::abs(F - pred));
    os << fmt(" X=%llu: F=%.4f pred=%.4f gap=%.4f;", static_cast<unsigned long long>(X), F, pred, gaps.back());
  }
  bool ok = std::all_of(gaps.begin(), gaps.end(), [](double g) { return std::isfinite(g); });
  ok = ok && gaps.back() < tol::ff_last;
  for (std::size_t i = 1; i < gaps.size(); ++i) ok = ok && gaps[i] <= tol::ff_slack * gaps[i - 1];
  return {ok, "alpha=0.5, v=1;" + os.str()};
}

Outcome ac7(const Context& ctx) {
  const auto kernel = gaussian_kernel();
  double worst = 0;
  for (int v : {1, 3}) {
    const auto fam = ZeroFamily::from_cache(ctx.cache, 1000, v, kT);
    for (double lam : {0.5, 0.9}) worst = std::max(worst, pairing_identity_check(fam, fejer(lam), kernel).residual);
  }
  return {worst < tol::pairing, fmt("max residual = %.2e over Fejer(0.5), Fejer(0.9), v = 1, 3, X = 1000", worst)};
}

Outcome ac8(const Context& ctx) {
  const auto kernel = gaussian_kernel();
  const auto tf = fejer(0.9);
  const double limit = limit_density(tf);
  bool ok = true;
  std::ostringstream os;
  os << fmt("Fejer(0.9), X=1e5, limit=%.4f;", limit);
  for (int v : {1, 3}) {
    const auto fam = ZeroFamily::from_cache(ctx.cache, 100000, v, kT);
    const double emp = one_level_density_empirical(fam, tf, kernel).density_normalised;
    const double pred = kernel_density_prediction(DensityIntegrand(100000, v), tf, kernel);
    const bool cross = std::abs(emp - pred) < tol::density_cross;
    const bool lim = std::abs(emp - limit) < tol::density_limit && std::abs(pred - limit) < tol::density_limit;
    ok = ok && cross && lim;
    os << fmt(" v=%d: empirical=%.4f ratios=%.4f |diff|=%.4f (%s) |emp-limit|=%.4f |ratios-limit|=%.4f (%s);", v, emp,
              pred, std::abs(emp - pred), cross ? "ok" : "fail", std::abs(emp - limit), std::abs(pred - limit),
              lim ? "ok" : "fail");
  }
  return {ok, os.str()};
}

Outcome ac9(const Context&) {
  const double euler = euler_product_check(0.1, 0.1, 1000000);
  double ident = 0;
  for (double tau : {0.3, 1.0, 7.0}) {
    const auto id = scaled_integrand_identity(tau);
    ident = std::max({ident, std::abs(id.exponential_form - id.sinc_form), std::abs(id.imag_part)});
  }
  double fused = 0;
  for (int v : {1, 3}) {
    const DensityIntegrand B(100000, v);
    for (double t : {0.01, -0.01}) fused = std::max(fused, std::abs(B.fused(t) - B.naive(t)));
  }
  return {euler < tol::euler && ident < tol::integrand_identity && fused < tol::fused_naive,
          fmt("Euler product = %.2e, integrand identity = %.2e, |fused - naive| at |t|=1e-2 = %.2e", euler, ident,
              fused)};
}

Outcome ac10(const Context&) {
  constexpr double r = 0.15;
  constexpr std::uint64_t X = 2000;
  double emp = 0, pred = 0;
  std::ostringstream os;
  for (int v : {1, 3}) {
    const double e = log_deriv_empirical(r, X, v);
    const double p = log_deriv_prediction(r, X, v).value.real();
    os << fmt(" v=%d: empirical=%.4f prediction=%.4f;", v, e, p);
    emp += e;
    pred += p;
  }
  const double rel = (emp - pred) / std::abs(pred);
  return {std::abs(rel) < tol::log_deriv_rel,
          fmt("r=0.15, all odd p <= 2000: empirical=%.4f prediction=%.4f relative gap=%.4f;", emp, pred, rel) +
              os.str()};
}

Outcome ac11(const Context& ctx) {
  const auto kernel = gaussian_kernel();
  bool ok = true;
  std::ostringstream os;
  for (int v : {1, 3}) {
    const auto s = survey_central_values(100000, v, ctx.threads);
    const double q = s.nonzero_proportion();
    ok = ok && q >= tol::nonzero_share && s.failures.empty();
    os << fmt(" v=%d: nonzero share=%.4f of %zu, undetermined=%zu, failures=%zu;", v, q, s.records.size(),
              s.undetermined(), s.failures.size());
    const auto fam = ZeroFamily::from_cache(ctx.cache, 100000, v, kT);
    for (double lam : kFejerLambdaGrid) {
      const auto b = fejer_bound(lam, fam, kernel);
      ok = ok && b.agreement < tol::fejer_agree && std::isfinite(b.lhs_sum);
      os << fmt(" lambda=%.2f lhs=%.4f bound=%.4f slack=%.4f agree=%.1e;", lam, b.lhs_sum, b.bound, b.slack,
                b.agreement);
    }
  }
  return {ok, os.str().substr(1)};
}

Outcome ac12(const Context&) {
  constexpr std::uint64_t X = 100000;
  const double scale = std::sqrt(static_cast<double>(X)) * std::log(static_cast<double>(X));
  double worst = 0;
  for (int v : {1, 3}) {
    const auto S = char_sums_range(10000, sieve_primes(X, v));
    for (std::uint64_t n = 2; n <= 10000; ++n)
      if (!is_perfect_square(n)) worst = std::max(worst, std::abs(static_cast<double>(S[n])) / scale);
  }
  return {worst <= tol::char_sum_const, fmt("max |S(n)|/(sqrt(X) log X) = %.4f over non-square n <= 1e4, v = 1, 3", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  bool needs_cache;
  Outcome (*run)(const Context&);
};

const Criterion kCriteria[] = {
    {1, "kernel pair", 5, false, ac1},
    {2, "Mellin round trip", 10, false, ac2},
    {3, "L-function correctness", 120, false, ac3},
    {4, "zero completeness", 300, false, ac4},
    {5, "explicit formula", 180, false, ac5},
    {6, "form factor main terms", 1800, true, ac6},
    {7, "Fourier pairing identity", 120, true, ac7},
    {8, "one-level density cross-pipeline", 3600, true, ac8},
    {9, "ratios internals", 300, false, ac9},
    {10, "log-derivative cross-check", 600, false, ac10},
    {11, "nonvanishing", 3600, true, ac11},
    {12, "character sums", 600, false, ac12},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lowzero acceptance run"};
  std::string cache_dir = "acceptance-cache";
  unsigned threads = 0;
  std::vector<int> only;
  app.add_option("--cache-dir", cache_dir, "zero cache, populated if cold");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);
  if (threads == 0) threads = default_threads();

  Context ctx{ZeroCache(cache_dir), threads};
  using clock = std::chrono::steady_clock;
  const std::set<int> pick(only.begin(), only.end());

  const auto selected = [&](const Criterion& c) { return pick.empty() || pick.count(c.id) > 0; };
  const bool want_cache =
      std::any_of(std::begin(kCriteria), std::end(kCriteria), [&](const Criterion& c) { return selected(c) && c.needs_cache; });

  // Warm cache: the timed criteria assume it.
  const auto t0 = clock::now();
  if (want_cache)
    for (auto [X, v] : {std::pair<std::uint64_t, int>{200000, 1}, {100000, 3}}) {
    const auto st = ctx.cache.populate(sieve_primes(X, v).primes, kT, threads);
    std::cout << fmt("setup: cache v=%d X=%llu hits=%zu computed=%zu failures=%zu", v,
                     static_cast<unsigned long long>(X), st.hits, st.computed, st.failures.size())
              << std::endl;
  }
  std::cout << fmt("setup: %.1f s", std::chrono::duration<double>(clock::now() - t0).count()) << std::endl;

  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!selected(c)) continue;
    const auto start = clock::now();
    Outcome out;
    try {
      out = c.run(ctx);
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::cout << fmt("AC%d %s %s [%.1f s / %.0f s%s] ", c.id, pass ? "PASS" : "FAIL", c.name, secs, c.budget_s,
                     in_time ? "" : ", over budget")
              << out.detail << std::endl;
  }
  std::cout << (failed ? fmt("%d criteria failed", failed) : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
