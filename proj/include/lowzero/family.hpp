#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "lowzero/zeros.hpp"

namespace lowzero {

struct FamilyOptions {
  /// Chebyshev degree of each table panel.
  int panel_degree = 17;
  /// Initial panel width in log x; halved until the tail test passes.
  double panel_width = 0.2;
  /// Lobatto nodes on each counting segment [1/2, 2].
  int segment_nodes = 32;
  /// Tail of the Z interpolant must sit below this times max(1, max |Z|).
  double z_tail_tol = 1e-11;
  ZeroOptions fallback;
};

/// Zero finder for many characters of one parity below p_max at a common height T.
/// The smoothed-sum terms depend on p only through x = pi n^2 / p, so each evaluation
/// point gets one table of e^{x rot} x^expo Gamma(w, x rot) in u = log x shared by all
/// primes. Per prime this yields Z at Lobatto nodes on [0, T] and L on the two
/// counting segments; anything not cleanly certified goes to find_zeros.
class FamilyEvaluator {
 public:
  FamilyEvaluator(int parity, std::uint64_t p_max, double T, FamilyOptions opt = {});

  ZeroList zeros(const QuadChar& chi) const;

  /// Critical-line nodes and Z values there from the tables.
  const std::vector<double>& z_nodes() const { return t_nodes_; }
  std::vector<double> z_values(const QuadChar& chi) const;
  /// L(sigma + i height) from the tables; height is kCountDelta or T.
  std::vector<cplx> segment_values(const QuadChar& chi, bool top) const;
  const std::vector<double>& segment_nodes() const { return sigma_nodes_; }

  std::uint64_t fallbacks() const { return fallbacks_.load(); }
  std::uint64_t bulk_certified() const { return bulk_.load(); }
  double panel_width() const { return h_; }

 private:
  struct Channel {
    cplx w, expo, rot, gamma_w;
    bool use_gamma;
    double xcut;
  };
  struct Workspace;

  void add_channel(cplx s, double phi, bool second);
  bool build_tables(double h);
  void accumulate(const QuadChar& chi, std::vector<cplx>& sums) const;

  int parity_;
  std::uint64_t p_max_;
  double T_;
  FamilyOptions opt_;
  std::vector<double> t_nodes_, sigma_nodes_;
  std::vector<Channel> channels_;  // critical line, then bottom segment (both sums), then top
  std::vector<std::size_t> order_;  // channels by xcut, descending
  double u0_ = 0.0, h_ = 0.0;
  std::size_t panels_ = 0;
  std::vector<cplx> coef_;  // [panel][channel in order_][k]
  mutable std::atomic<std::uint64_t> fallbacks_{0}, bulk_{0};
};

/// Certified zero lists for the given primes (any mix of parities), computed with the
/// bulk evaluator and in parallel.
std::vector<ZeroList> find_zeros_family(std::span<const std::uint64_t> primes, double T, unsigned threads,
                                        const FamilyOptions& opt = {});

}  // namespace lowzero
