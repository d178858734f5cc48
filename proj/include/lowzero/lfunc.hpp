#pragma once

#include <cstddef>
#include <cstdint>

#include "lowzero/special.hpp"

namespace lowzero {

/// The quadratic character n -> (n|p) for an odd prime p.
struct QuadChar {
  std::uint64_t p = 3;
  int v = 3;  // p mod 4
  int a = 1;  // parity: chi(-1) = (-1)^a

  explicit QuadChar(std::uint64_t prime);
  QuadChar() = default;

  int operator()(std::int64_t n) const;
};

struct CompletedValue {
  cplx s;
  cplx lambda;
  cplx l;
  double fe_residual = 0.0;
};

struct LOptions {
  double t_max = 100.0;
  std::size_t term_budget = 10'000'000;
  /// Throw SelfCheckError when the functional equation check fails.
  bool self_check = true;
};

/// Rotation angle used for the smoothed sum at height t.
double rotation_angle(double t);

/// Lambda(s) = (p/pi)^((s+a)/2) Gamma((s+a)/2) L(s) from the rotated incomplete-gamma
/// expansion with angle phi, |phi| < pi/2.
cplx completed_lambda(const QuadChar& chi, cplx s, double phi, const LOptions& opt = {});

/// Lambda(s) and L(s) with the functional-equation residual |Lambda(s) - Lambda(1-s)| / |Lambda(s)|,
/// where Lambda(1-s) is summed along a different ray.
CompletedValue eval_completed(const QuadChar& chi, cplx s, const LOptions& opt = {});

/// (p/pi)^((s+a)/2) Gamma((s+a)/2)
cplx gamma_factor(const QuadChar& chi, cplx s);

/// L(1/2, chi_p) (real).
double central_value(const QuadChar& chi, const LOptions& opt = {});

/// theta(t) = (t/2) log(p/pi) + Im log Gamma((1/2 + it + a)/2), continuous in t.
double hardy_theta(const QuadChar& chi, double t);

/// Z(t) = e^(i theta(t)) L(1/2 + it), real with |Z| = |L|.
double hardy_Z(const QuadChar& chi, double t, const LOptions& opt = {});

/// e^(i theta) L(1/2+it) with both halves of the expansion summed separately; its
/// imaginary part measures the evaluation error.
cplx hardy_Z_complex(const QuadChar& chi, double t, const LOptions& opt = {});

/// Threshold below which |L(1/2)| is reported as undetermined.
double tol_zero(std::uint64_t p);

/// Partial Dirichlet series sum_{n <= N} chi(n) n^-s.
cplx dirichlet_partial(const QuadChar& chi, cplx s, std::uint64_t N);

/// L(s) = Lambda(s) / gamma_factor(s).
cplx eval_L(const QuadChar& chi, cplx s, const LOptions& opt = {});

}  // namespace lowzero
