#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace lowzero {

/// Even test function r with Fourier transform r_hat(alpha) = int r(x) e^(-2 pi i alpha x) dx.
struct TestFunction {
  std::string name;
  double param = 0.0;
  std::function<double(double)> r;
  std::function<double(double)> r_hat;
  /// r_hat vanishes for |alpha| >= support (infinity when not compactly supported).
  double support = std::numeric_limits<double>::infinity();
  bool closed_forms = true;
  /// Points alpha > 0 where r_hat is not smooth.
  std::vector<double> kinks;
  /// Past this |alpha| the physical-side integrand is handled by `tail` (or is negligible).
  double r_cutoff = 50.0;
  /// int_{cutoff}^inf r(a) (1 - sin(2 pi a)/(2 pi a)) da, when r decays slowly.
  std::function<double(double)> tail;
};

/// r(u) = (sin(pi lambda u) / (pi lambda u))^2, r_hat = lambda^-2 max(lambda - |alpha|, 0).
TestFunction fejer(double lambda);
/// r = r_hat = exp(-pi u^2).
TestFunction gaussian_tf();
/// r_hat = (1 - (alpha/lambda)^2)^2 on |alpha| < lambda.
TestFunction bump(double lambda);
/// Test function given by samples of r_hat on an ascending grid over [0, support]
/// (linear interpolation, even extension); r follows by quadrature.
TestFunction sampled_tf(std::string name, std::vector<double> alphas, std::vector<double> rhat_values);
TestFunction zero_tf();

/// "fejer", "gauss", "bump"; param is lambda where it applies.
TestFunction tf_by_name(const std::string& name, double param);

/// r(u) recomputed from r_hat by quadrature (needs finite support).
double r_from_rhat(const TestFunction& tf, double u);
/// r_hat(alpha) recomputed from r by quadrature.
double rhat_from_r(const TestFunction& tf, double alpha);

struct LimitDensity {
  double physical;  // int r(a) (1 - sin(2 pi a)/(2 pi a)) da
  double fourier;   // r_hat(0) - (1/2) int_{-1}^{1} r_hat
};

/// The symplectic limit computed on both sides.
LimitDensity limit_density_both(const TestFunction& tf);
double limit_density(const TestFunction& tf);

/// 1 - sin(2 pi x)/(2 pi x), stable at small x.
double symplectic_density(double x);

}  // namespace lowzero
