#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lowzero/kernel.hpp"
#include "lowzero/special.hpp"
#include "lowzero/testfn.hpp"

namespace lowzero {

/// |Im alpha|, |Im beta| <= X^(1 - eps).
inline constexpr double kRatiosImagEps = 0.01;
/// Below this |t| the density integrand switches to its fused expansion.
inline constexpr double kFusedRadius = 1e-3;

struct RatiosParams {
  cplx alpha;
  cplx beta;
  std::uint64_t X = 1000;
  int v = 1;
};

/// Shift of the gamma ratio for the class: 1/4 for even characters (v = 1), 3/4 for odd.
double gamma_shift(int v);

/// Gamma(w0 - r/2) / Gamma(w0 + r/2).
cplx gamma_ratio(cplx r, int v);

/// X* zeta(1+2a)/zeta(1+a+b) + sum_p (p/pi)^-a Gamma-ratio zeta(1-2a)/zeta(1-a+b).
/// DomainError outside the conjectured ranges, PoleError when alpha = beta.
cplx ratios_main_terms(const RatiosParams& params);

/// |prod_{p<=P} local(p) / (zeta(1+2a)/zeta(1+a+b)) - 1|.
double euler_product_check(cplx alpha, cplx beta, std::uint64_t P);

struct LogDerivPrediction {
  cplx value;
  bool out_of_range = false;
};

/// sum_p [zeta'/zeta(1+2r) - (p/pi)^-r Gamma-ratio zeta(1-2r)]. Outside
/// 1/log X <= Re r < 1/4 this throws unless `exploratory`, which flags the value instead.
LogDerivPrediction log_deriv_prediction(cplx r, std::uint64_t X, int v, bool exploratory = false);

/// sum_p L'/L(1/2 + r, chi_p) for real r by a five-point central difference of L.
double log_deriv_empirical(double r, std::uint64_t X, int v, double h = 1e-3);

/// Bracket of the density prediction integral: f(t) B(t) / 2 pi integrated over t.
class DensityIntegrand {
 public:
  DensityIntegrand(std::uint64_t X, int v);

  /// Re B(t), switching to the fused expansion for |t| < kFusedRadius.
  double operator()(double t) const;
  double naive(double t) const;
  double fused(double t) const;
  std::size_t x_star() const { return logs_.size(); }
  std::uint64_t X() const { return X_; }
  int v() const { return v_; }

 private:
  cplx pole_part_naive(double t) const;
  cplx pole_part_fused(double t) const;

  std::uint64_t X_;
  int v_;
  double w0_;
  std::vector<double> logs_;  // log(p / pi)
  double sum_log_ = 0.0;
  std::vector<double> series_;  // fused coefficients of the pole part in u = 2it
};

/// (1/2 pi) int f(t) B(t) dt with f even and negligible past t_max.
double density_prediction(const DensityIntegrand& B, const std::function<double(double)>& f, double t_max);
double density_prediction(const std::function<double(double)>& f, double t_max, std::uint64_t X, int v);

/// Prediction for the kernel-weighted statistic sum K(1/2+i gamma) r(gamma log X / 2 pi), divided
/// by K(1/2) Li(X) / 2 so it lines up with one_level_density_empirical.
double kernel_density_prediction(const DensityIntegrand& B, const TestFunction& tf, const KernelSpec& kernel);

struct ScaledPrediction {
  double scaled = 0.0;  // (X*)^-1 density_prediction with f(t) = g(t log X / 2 pi)
  double limit = 0.0;   // int g(tau) (1 - sin(2 pi tau)/(2 pi tau)) d tau
  double gap = 0.0;
};

ScaledPrediction scaled_density_prediction(const TestFunction& g, std::uint64_t X, int v);
ScaledPrediction scaled_density_prediction(const DensityIntegrand& B, const TestFunction& g);

struct IntegrandIdentity {
  double exponential_form = 0.0;  // Re[1 + e^(-2 pi i tau)/(4 pi i tau) - e^(2 pi i tau)/(4 pi i tau)]
  double sinc_form = 0.0;         // 1 - sin(2 pi tau)/(2 pi tau)
  double imag_part = 0.0;
};

IntegrandIdentity scaled_integrand_identity(double tau);

}  // namespace lowzero
