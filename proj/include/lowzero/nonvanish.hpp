#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowzero/density.hpp"
#include "lowzero/kernel.hpp"

namespace lowzero {

enum class CentralStatus { nonzero, undetermined };

const char* to_string(CentralStatus s);

struct CentralRecord {
  std::uint64_t p = 0;
  double central_value = 0.0;
  CentralStatus status = CentralStatus::nonzero;
  /// 2 when undetermined (the central multiplicity is even), else 0.
  int m_p_lower = 0;
};

struct SurveyFailure {
  std::uint64_t p;
  std::string message;
};

struct CentralSurvey {
  std::uint64_t X = 0;
  int v = 1;
  std::vector<CentralRecord> records;
  std::vector<SurveyFailure> failures;

  /// Share of records with |L(1/2)| >= tol_scale * tol_zero(p).
  double nonzero_proportion(double tol_scale = 1.0) const;
  std::size_t undetermined() const;
};

CentralSurvey survey_central_values(std::uint64_t X, int v, unsigned threads = 1);

/// Report grid for the Fejer bound.
inline const std::vector<double> kFejerLambdaGrid = {0.5, 0.7, 0.9, 0.99};

struct FejerBound {
  double lambda = 0.0;
  double lhs_quadrature = 0.0;  // int F(alpha, X) r_hat(alpha) d alpha
  double lhs_sum = 0.0;         // (K(1/2) Li(X) / 4)^-1 sum K(rho) r(gamma log X / 2 pi)
  double agreement = 0.0;       // |lhs_quadrature - lhs_sum|
  double bound = 0.0;           // -1 + 2 / lambda
  double slack = 0.0;           // lhs_sum - bound; <= 0 means the bound already holds
  double proportion_bound = 0.0;  // -1/4 + 1/(2 lambda)
};

/// Needs 0 < lambda < 1.
FejerBound fejer_bound(double lambda, const ZeroFamily& fam, const KernelSpec& kernel);

/// int_0^inf t^(1/2) a(t) dt / t by quadrature; equals K(1/2).
double mellin_half_identity(const KernelSpec& kernel);

}  // namespace lowzero
