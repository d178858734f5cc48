#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowzero/kernel.hpp"
#include "lowzero/lfunc.hpp"
#include "lowzero/testfn.hpp"
#include "lowzero/zero_cache.hpp"
#include "lowzero/zeros.hpp"

namespace lowzero {

/// Normaliser of the form factor: K(1/2) Li(X) / 4.
double form_factor_norm(const KernelSpec& kernel, double X);
/// Normaliser of the one-level density statement: K(1/2) Li(X) / 2.
double density_norm(const KernelSpec& kernel, double X);
inline constexpr const char* kFormFactorNormLabel = "FORM_FACTOR_NORM=K(1/2)Li(X)/4";
inline constexpr const char* kDensityNormLabel = "DENSITY_NORM=K(1/2)Li(X)/2";

struct ExplicitSides {
  cplx lhs;        // sum over zeros of K(rho) x^(i gamma), both signs of gamma
  cplx rhs;        // -x^(-1/2) sum a(n/x) Lambda(n) chi(n) + x^(-1/2) a(1/x) log(p / 2 pi)
  double residual = 0.0;
  double constant = 0.0;  // residual * sqrt(x)
  /// rhs with every term kept: dual prime sum, gamma-factor integral and the K(0)
  /// residue of the trivial zero for even characters.
  cplx rhs_exact;
  double exact_residual = 0.0;
  std::uint64_t n_max = 0;
};

/// Both sides of the explicit formula for one character. Zeros must be certified up to a
/// height where |K(1/2 + iT)| < 1e-14.
ExplicitSides explicit_formula_sides(const QuadChar& chi, double x, const MellinPair& pair, const ZeroList& zeros);

struct DiagonalDiagnostic {
  double A1_numeric = 0.0;
  double A1_main = 0.0;
  double gap = 0.0;
  /// gap / (x^(-1/4) Li(X) + sqrt(X) log X)
  double scaled_gap = 0.0;
};

DiagonalDiagnostic diagonal_diagnostic(std::uint64_t X, int v, double x, const MellinPair& pair);

/// Certified zeros of every character in one residue class below X.
struct ZeroFamily {
  std::uint64_t X = 0;
  int v = 1;
  double T = kDefaultZeroHeight;
  std::vector<std::uint64_t> primes;
  std::vector<double> gammas;  // all positive ordinates, concatenated
  std::size_t central_flags = 0;

  static ZeroFamily from_lists(std::uint64_t X, int v, double T, const std::vector<ZeroList>& lists);
  /// Throws MissingCacheError naming every absent prime.
  static ZeroFamily from_cache(const ZeroCache& cache, std::uint64_t X, int v, double T);
  std::size_t x_star() const { return primes.size(); }
};

/// F(alpha, X) from cached zeros; one instance per (family, kernel).
class FormFactor {
 public:
  FormFactor(const ZeroFamily& fam, const KernelSpec& kernel);
  double operator()(double alpha) const;
  /// norm^-1 sum K(rho) r(gamma log X / 2 pi) with the form-factor normaliser.
  double weighted_sum(const TestFunction& tf) const;
  double norm() const { return norm_; }
  double log_x() const { return log_x_; }

 private:
  std::vector<double> gamma_, weight_;  // weight = 2 K(1/2 + i gamma), both signs
  double norm_, log_x_;
};

double form_factor(const ZeroFamily& fam, double alpha, const KernelSpec& kernel);

/// -1 + (K(1/2)/2)^-1 X^(-|a|/2) a(X^-|a|) (X - Li(X) log 2pi) / Li(X)
double form_factor_prediction(double X, double alpha, const MellinPair& pair);

struct FormFactorGrid {
  double X = 0.0;
  int v = 1;
  std::string kernel;
  std::vector<double> alphas, values, prediction;
};

FormFactorGrid form_factor_grid(const ZeroFamily& fam, const MellinPair& pair, const std::vector<double>& alphas);

struct DensityValue {
  double form_factor_normalised = 0.0;  // sum / (K(1/2) Li(X) / 4)
  double density_normalised = 0.0;      // sum / (K(1/2) Li(X) / 2), compare with limit_density
};

DensityValue one_level_density_empirical(const ZeroFamily& fam, const TestFunction& tf, const KernelSpec& kernel);

struct PairingCheck {
  double integral = 0.0;    // int F(alpha, X) r_hat(alpha) d alpha by quadrature
  double double_sum = 0.0;  // form-factor-normalised zero sum
  double residual = 0.0;
};

PairingCheck pairing_identity_check(const ZeroFamily& fam, const TestFunction& tf, const KernelSpec& kernel);

}  // namespace lowzero
