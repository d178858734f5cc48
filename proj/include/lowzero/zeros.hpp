#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "lowzero/lfunc.hpp"

namespace lowzero {

inline constexpr double kDefaultZeroHeight = 8.0;
inline constexpr double kCountDelta = 1e-3;

/// Critical-line ordinates 0 < gamma <= T of L(s, chi_p), positive half only.
struct ZeroList {
  std::uint64_t p = 0;
  double T = 0.0;
  std::vector<double> gammas;
  bool central_flag = false;
  bool certified = false;
  /// Argument-principle count on [delta, T]; -1 when not computed.
  long ap_count = -1;
  /// Ordinates where |Z| touches zero without changing sign (listed once in gammas).
  std::vector<double> even_order;
};

struct ZeroOptions {
  LOptions eval;
  double root_tol = 1e-10;
  int refinements = 2;
};

/// Sign changes of hardy_Z on (0, T] refined to 1e-10 and certified against count_zeros.
ZeroList find_zeros(const QuadChar& chi, double T, const ZeroOptions& opt = {});

/// Number of zeros with delta < gamma <= T from the change of arg Lambda along the right
/// half of the rectangle [-1, 2] x [delta, T]; the left half mirrors it.
long count_zeros(const QuadChar& chi, double T, const LOptions& opt = {});

/// Unrounded winding value behind count_zeros.
double count_zeros_raw(const QuadChar& chi, double T, const LOptions& opt = {});

/// Main term (T / 2 pi) log(p T / (2 pi e)) for the positive-half count.
double smooth_count(const QuadChar& chi, double T);

/// arg L(sigma + it) carried continuously from sigma = 2 (where Re L > 0) down to
/// sigma = 1/2. eval returns L at sigma + it.
double tracked_arg(const std::function<cplx(double)>& eval, double sigma_from = 2.0, double sigma_to = 0.5);

/// Root of f on [a, b] with f(a) f(b) < 0.
double bracket_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                    double tol);

}  // namespace lowzero
