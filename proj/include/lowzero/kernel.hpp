#pragma once

#include <functional>
#include <string>

#include "lowzero/special.hpp"

namespace lowzero {

/// Analytic kernel K(s) on -1 < Re s < 2 with its Mellin companion
/// a(y) = (1/2 pi) int K(c + it) y^(-c-it) dt.
struct KernelSpec {
  std::string name;
  std::function<cplx(cplx)> K;
  double default_c = 0.5;
  /// Closed-form a(y) when known; empty otherwise.
  std::function<double(double)> closed_form_a;
  /// K(s) = exp(kappa (s - 1/2)^2) when kappa > 0. Used to place contours and cut-offs.
  double kappa = 0.0;

  /// Validates K(1/2) != 0 and K(1/2 + it) = K(1/2 - it) on a grid; throws DomainError.
  void validate() const;
  double at_half() const { return K(cplx(0.5, 0.0)).real(); }
};

struct MellinPair {
  KernelSpec spec;

  /// Closed form when available, numeric contour integral otherwise.
  double a(double y) const;
};

/// exp(kappa (s - 1/2)^2); kappa = 1 is the default kernel.
KernelSpec gaussian_kernel(double kappa = 1.0);

/// "gauss" or "gauss2".
KernelSpec kernel_by_name(const std::string& name);

cplx eval_K(const KernelSpec& spec, cplx s);

/// Numeric a(y) on the contour Re s = c, truncated where |K(c+it)| < 1e-18.
double a_numeric(const MellinPair& pair, double y, double c);

/// a_numeric on the contour that minimises cancellation for this y.
double a_numeric(const MellinPair& pair, double y);

/// Closed form for the default kernel: y^(-1/2) exp(-(log y)^2 / 4) / (2 sqrt(pi)).
double a_closed_form(double y);

/// Closed form for exp(kappa (s - 1/2)^2).
double a_closed_form(double y, double kappa);

/// int_0^inf a(t) t^(s-1) dt. With use_numeric the inner a comes from a_numeric.
cplx mellin_recover_K(const MellinPair& pair, cplx s, bool use_numeric = false);

/// |t| beyond which |K(c + it)| < 1e-18.
double truncation_height(const KernelSpec& spec, double c);

/// int |K(c+it)| log(|t|+2) dt over the truncated range.
double kbound2_integral(const KernelSpec& spec, double c);

/// int_0^inf |a'(u)| u du using central differences of a.
double abound2_integral(const MellinPair& pair);

}  // namespace lowzero
