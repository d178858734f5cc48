#include "lowzero/nonvanish.hpp"

#include <cmath>
#include <exception>
#include <mutex>

#include "lowzero/errors.hpp"
#include "lowzero/lfunc.hpp"
#include "lowzero/numth.hpp"
#include "lowzero/parallel.hpp"
#include "lowzero/quadrature.hpp"

namespace lowzero {

const char* to_string(CentralStatus s) { return s == CentralStatus::nonzero ? "nonzero" : "undetermined"; }

double CentralSurvey::nonzero_proportion(double tol_scale) const {
  if (records.empty()) return 1.0;
  std::size_t n = 0;
  for (const auto& r : records)
    if (std::abs(r.central_value) >= tol_scale * tol_zero(r.p)) ++n;
  return static_cast<double>(n) / static_cast<double>(records.size());
}

std::size_t CentralSurvey::undetermined() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.status == CentralStatus::undetermined;
  return n;
}

CentralSurvey survey_central_values(std::uint64_t X, int v, unsigned threads) {
  const auto primes = sieve_primes(X, v).primes;
  CentralSurvey out;
  out.X = X;
  out.v = v;
  std::vector<CentralRecord> recs(primes.size());
  std::vector<std::string> errs(primes.size());
  std::vector<char> ok(primes.size(), 0);
  parallel_for(primes.size(), threads, [&](std::size_t i) {
    try {
      CentralRecord r;
      r.p = primes[i];
      r.central_value = central_value(QuadChar(primes[i]));
      if (std::abs(r.central_value) < tol_zero(r.p)) {
        r.status = CentralStatus::undetermined;
        r.m_p_lower = 2;
      }
      recs[i] = r;
      ok[i] = 1;
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (ok[i])
      out.records.push_back(recs[i]);
    else
      out.failures.push_back({primes[i], errs[i]});
  }
  return out;
}

FejerBound fejer_bound(double lambda, const ZeroFamily& fam, const KernelSpec& kernel) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("fejer_bound: lambda must lie in (0, 1)");
  const auto chk = pairing_identity_check(fam, fejer(lambda), kernel);
  FejerBound b;
  b.lambda = lambda;
  b.lhs_quadrature = chk.integral;
  b.lhs_sum = chk.double_sum;
  b.agreement = chk.residual;
  b.bound = -1.0 + 2.0 / lambda;
  b.slack = b.lhs_sum - b.bound;
  b.proportion_bound = -0.25 + 0.5 / lambda;
  return b;
}

double mellin_half_identity(const KernelSpec& kernel) {
  const MellinPair pair{kernel};
  // t = e^u turns the integral into int e^(u/2) a(e^u) du, Gaussian-like in u.
  const double kappa = kernel.kappa > 0 ? kernel.kappa : 4.0;
  const double U = std::sqrt(4.0 * kappa * 45.0);
  std::vector<double> br;
  const int n = static_cast<int>(std::ceil(2 * U));
  for (int i = 0; i <= n; ++i) br.push_back(-U + 2 * U * i / n);
  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-13;
  return quad::integrate_pieces([&](double u) { return std::exp(0.5 * u) * pair.a(std::exp(u)); }, br, opt);
}

}  // namespace lowzero
