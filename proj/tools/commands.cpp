#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>

#include "lowzero/density.hpp"
#include "lowzero/errors.hpp"
#include "lowzero/kernel.hpp"
#include "lowzero/nonvanish.hpp"
#include "lowzero/numth.hpp"
#include "lowzero/ratios.hpp"
#include "lowzero/zero_cache.hpp"
#include "output.hpp"

namespace lowzero::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRatioAlpha = 0.1, kRatioBeta = 0.2;
const std::vector<double> kExplicitX = {4.0, 16.0, 64.0, 256.0};

void progress(const std::string& msg) { std::cerr << "[lowzero] " << msg << '\n'; }

fs::path out_path(const RunConfig& cfg, const std::string& name) { return fs::path(cfg.out_dir) / name; }

ZeroCache cache_of(const RunConfig& cfg) { return ZeroCache(cfg.cache_dir, cfg.cache_version); }

ZeroFamily load_family(const RunConfig& cfg) {
  progress("loading cached zeros for X=" + std::to_string(cfg.X) + " v=" + std::to_string(cfg.v));
  return ZeroFamily::from_cache(cache_of(cfg), cfg.X, cfg.v, cfg.T);
}

// ---- sections shared by the single commands and the report ----

struct DensityRow {
  std::string tf;
  double param, empirical, limit, ratios;
  std::size_t x_star;
};

std::vector<DensityRow> density_rows(const RunConfig& cfg, const ZeroFamily& fam, const DensityIntegrand& B) {
  const auto K = kernel_by_name(cfg.kernel);
  std::vector<DensityRow> rows;
  for (const auto& name : cfg.test_functions()) {
    const auto tf = tf_by_name(name, cfg.lambda);
    rows.push_back({name, tf.param, one_level_density_empirical(fam, tf, K).density_normalised, limit_density(tf),
                    kernel_density_prediction(B, tf, K), fam.x_star()});
  }
  return rows;
}

struct RatiosRow {
  std::string statistic;
  double empirical, prediction;
};

std::vector<RatiosRow> ratios_rows(const RunConfig& cfg, const ZeroFamily& fam, const DensityIntegrand& B) {
  std::vector<RatiosRow> rows;
  const auto ld = log_deriv_prediction(cfg.ratio_r, cfg.X, cfg.v, true);
  rows.push_back({"log_deriv_r=" + num(cfg.ratio_r) + (ld.out_of_range ? "_out-of-range" : ""),
                  log_deriv_empirical(cfg.ratio_r, cfg.X, cfg.v), ld.value.real()});
  if (kRatioBeta >= 1.0 / std::log(static_cast<double>(cfg.X))) {
    double emp = 0.0;
    for (auto p : sieve_primes(cfg.X, cfg.v).primes) {
      const QuadChar chi(p);
      emp += (eval_L(chi, 0.5 + kRatioAlpha) / eval_L(chi, 0.5 + kRatioBeta)).real();
    }
    const auto pred = ratios_main_terms({kRatioAlpha, kRatioBeta, cfg.X, cfg.v});
    rows.push_back({"ratio_a=" + num(kRatioAlpha) + "_b=" + num(kRatioBeta), emp, pred.real()});
  }
  for (const auto& d : density_rows(cfg, fam, B))
    rows.push_back({"density_" + d.tf + (d.tf == "gauss" ? "" : "_" + num(d.param)), d.empirical, d.ratios});
  return rows;
}

std::vector<ExplicitSides> explicit_rows(const RunConfig& cfg, const ZeroFamily& fam,
                                         std::vector<std::uint64_t>& which) {
  const auto pair = MellinPair{kernel_by_name(cfg.kernel)};
  const auto cache = cache_of(cfg);
  std::vector<ExplicitSides> out;
  // Zeros above T must carry negligible kernel weight.
  if (std::abs(eval_K(pair.spec, cplx(0.5, cfg.T))) > 1e-14) return out;
  for (auto p : fam.primes) {
    if (p < 101) continue;
    which.push_back(p);
    if (which.size() == 3) break;
  }
  for (auto p : which) {
    const auto z = cache.load(p, cfg.T);
    for (double x : kExplicitX) out.push_back(explicit_formula_sides(QuadChar(p), x, pair, *z));
  }
  return out;
}

json fejer_json(const std::vector<FejerBound>& bounds) {
  json arr = json::array();
  for (const auto& b : bounds)
    arr.push_back({{"lambda", b.lambda},
                   {"lhs_quadrature", b.lhs_quadrature},
                   {"lhs_sum", b.lhs_sum},
                   {"agreement", b.agreement},
                   {"bound", b.bound},
                   {"slack", b.slack},
                   {"proportion_bound", b.proportion_bound}});
  return arr;
}

std::vector<FejerBound> fejer_bounds(const RunConfig& cfg, const ZeroFamily& fam) {
  std::vector<FejerBound> out;
  const auto K = kernel_by_name(cfg.kernel);
  for (double lam : kFejerLambdaGrid) out.push_back(fejer_bound(lam, fam, K));
  return out;
}

json survey_json(const RunConfig& cfg, const CentralSurvey& s) {
  json failures = json::array();
  for (const auto& f : s.failures) failures.push_back({{"p", f.p}, {"error", f.message}});
  return {{"records", s.records.size()},
          {"undetermined", s.undetermined()},
          {"proportion_nonzero", s.nonzero_proportion(cfg.tol_zero_scale)},
          {"failures", failures}};
}

CsvTable survey_csv(const RunConfig& cfg, const CentralSurvey& s) {
  CsvTable t{{"p", "central_value", "status"}, {}};
  for (const auto& r : s.records) {
    const bool nz = std::abs(r.central_value) >= cfg.tol_zero_scale * tol_zero(r.p);
    t.rows.push_back({std::to_string(r.p), num(r.central_value), nz ? "nonzero" : "undetermined"});
  }
  return t;
}

std::string formfactor_svg(const FormFactorGrid& g) {
  PlotSpec spec{"Form factor F(alpha, X), X=" + num(g.X) + ", v=" + std::to_string(g.v), "alpha", "F", {}};
  spec.series.push_back({"empirical", g.alphas, g.values, "#1f77b4"});
  spec.series.push_back({"main terms", g.alphas, g.prediction, "#d62728", true});
  return svg_plot(spec);
}

std::string density_svg(const ZeroFamily& fam) {
  const double L = std::log(static_cast<double>(fam.X));
  constexpr double width = 0.05, top = 3.0;
  const int nb = static_cast<int>(top / width);
  std::vector<double> centers(nb), hist(nb, 0.0);
  for (int i = 0; i < nb; ++i) centers[i] = (i + 0.5) * width;
  for (double g : fam.gammas) {
    const int b = static_cast<int>(g * L / (2 * kPi) / width);
    if (b >= 0 && b < nb) hist[b] += 1.0;
  }
  for (auto& h : hist) h /= static_cast<double>(fam.x_star()) * width;
  std::vector<double> xs, ws;
  for (int i = 0; i <= 300; ++i) {
    xs.push_back(top * i / 300);
    ws.push_back(symplectic_density(xs.back()));
  }
  PlotSpec spec{"Scaled zeros gamma log X / 2pi, X=" + std::to_string(fam.X) + ", v=" + std::to_string(fam.v), "x",
                "density per character", {}};
  spec.series.push_back({"zeros", centers, hist, "#1f77b4", false, true});
  spec.series.push_back({"1 - sin(2 pi x)/(2 pi x)", xs, ws, "#d62728"});
  return svg_plot(spec);
}

std::string ratios_svg(const DensityIntegrand& B) {
  const double L = std::log(static_cast<double>(B.X()));
  std::vector<double> taus, pred, lim;
  for (int i = 1; i <= 300; ++i) {
    const double tau = 3.0 * i / 300;
    taus.push_back(tau);
    pred.push_back(B(2 * kPi * tau / L) / (static_cast<double>(B.x_star()) * L));
    lim.push_back(symplectic_density(tau));
  }
  PlotSpec spec{"Ratios density integrand, X=" + std::to_string(B.X()) + ", v=" + std::to_string(B.v()), "tau",
                "density per character", {}};
  spec.series.push_back({"with lower-order terms", taus, pred, "#2ca02c"});
  spec.series.push_back({"limit", taus, lim, "#d62728", true});
  return svg_plot(spec);
}

std::string central_svg(const CentralSurvey& s) {
  if (s.records.empty()) return svg_plot({"L(1/2) values", "L(1/2)", "count", {}});
  double lo = s.records.front().central_value, hi = lo;
  for (const auto& r : s.records) lo = std::min(lo, r.central_value), hi = std::max(hi, r.central_value);
  lo = std::min(lo, 0.0);
  if (hi <= lo) hi = lo + 1;
  const int nb = 40;
  const double w = (hi - lo) / nb;
  std::vector<double> c(nb), h(nb, 0.0);
  for (int i = 0; i < nb; ++i) c[i] = lo + (i + 0.5) * w;
  for (const auto& r : s.records) h[std::min(nb - 1, static_cast<int>((r.central_value - lo) / w))] += 1;
  PlotSpec spec{"Central values L(1/2, chi_p), X=" + std::to_string(s.X) + ", v=" + std::to_string(s.v), "L(1/2)",
                "count", {}};
  spec.series.push_back({"primes", c, h, "#1f77b4", false, true});
  return svg_plot(spec);
}

CsvTable explicit_csv(const std::vector<std::uint64_t>& which, const std::vector<ExplicitSides>& rows) {
  CsvTable t{{"p", "x", "lhs_re", "rhs_re", "residual"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i)
    t.rows.push_back({std::to_string(which[i / kExplicitX.size()]), num(kExplicitX[i % kExplicitX.size()]),
                      num(rows[i].lhs.real()), num(rows[i].rhs.real()), num(rows[i].residual)});
  return t;
}

}  // namespace

int cmd_sieve(const RunConfig& cfg) {
  const auto ps = sieve_primes(cfg.X, cfg.v);
  CsvTable t{{"p"}, {}};
  for (auto p : ps.primes) t.rows.push_back({std::to_string(p)});
  write_text(out_path(cfg, "primes.csv"), t.str());
  progress(std::to_string(ps.count()) + " primes written");
  return kExitOk;
}

int cmd_zeros(const RunConfig& cfg) {
  auto primes = cfg.prime_subset();
  if (primes.empty()) primes = sieve_primes(cfg.X, cfg.v).primes;
  const auto cache = cache_of(cfg);
  FamilyOptions opt;
  opt.fallback.root_tol = cfg.root_tol;
  progress("populating cache for " + std::to_string(primes.size()) + " primes at T=" + num(cfg.T));
  const auto st = cache.populate(primes, cfg.T, cfg.worker_threads(), opt);

  CsvTable t{{"p", "zeros", "central_flag", "first_gamma"}, {}};
  for (auto p : primes) {
    const auto z = cache.load(p, cfg.T);
    if (!z) continue;
    t.rows.push_back({std::to_string(p), std::to_string(z->gammas.size()), z->central_flag ? "1" : "0",
                      z->gammas.empty() ? "" : num(z->gammas.front())});
  }
  write_text(out_path(cfg, "zeros.csv"), t.str());
  std::string manifest = "p\n";
  for (auto p : st.failures) manifest += std::to_string(p) + "\n";
  write_text(out_path(cfg, "zeros_failures.csv"), manifest);
  std::cout << "hits=" << st.hits << " computed=" << st.computed << " failures=" << st.failures.size() << '\n';
  return st.failures.empty() ? kExitOk : kExitPartial;
}

int cmd_formfactor(const RunConfig& cfg) {
  const auto fam = load_family(cfg);
  const auto g = form_factor_grid(fam, MellinPair{kernel_by_name(cfg.kernel)}, cfg.alphas());
  CsvTable t{{"alpha", "F", "prediction", "gap"}, {}};
  for (std::size_t i = 0; i < g.alphas.size(); ++i)
    t.rows.push_back({num(g.alphas[i]), num(g.values[i]), num(g.prediction[i]), num(g.values[i] - g.prediction[i])});
  write_text(out_path(cfg, "formfactor.csv"), t.str());
  write_text(out_path(cfg, "formfactor.svg"), formfactor_svg(g));
  return kExitOk;
}

int cmd_density(const RunConfig& cfg) {
  const auto fam = load_family(cfg);
  const DensityIntegrand B(cfg.X, cfg.v);
  CsvTable t{{"X", "empirical", "limit", "ratios", "X_star"}, {}};
  for (const auto& d : density_rows(cfg, fam, B))
    t.rows.push_back({std::to_string(cfg.X), num(d.empirical), num(d.limit), num(d.ratios), std::to_string(d.x_star)});
  write_text(out_path(cfg, "density.csv"), t.str());
  write_text(out_path(cfg, "density.svg"), density_svg(fam));
  std::vector<std::uint64_t> which;
  const auto ex = explicit_rows(cfg, fam, which);
  write_text(out_path(cfg, "explicit.csv"), explicit_csv(which, ex).str());
  return kExitOk;
}

int cmd_ratios(const RunConfig& cfg) {
  const auto fam = load_family(cfg);
  const DensityIntegrand B(cfg.X, cfg.v);
  CsvTable t{{"X", "v", "statistic", "empirical", "prediction", "gap"}, {}};
  for (const auto& r : ratios_rows(cfg, fam, B))
    t.rows.push_back({std::to_string(cfg.X), std::to_string(cfg.v), r.statistic, num(r.empirical), num(r.prediction),
                      num(r.empirical - r.prediction)});
  write_text(out_path(cfg, "ratios.csv"), t.str());
  write_text(out_path(cfg, "ratios.svg"), ratios_svg(B));
  return kExitOk;
}

int cmd_nonvanish(const RunConfig& cfg) {
  const auto fam = load_family(cfg);
  progress("surveying central values");
  const auto s = survey_central_values(cfg.X, cfg.v, cfg.worker_threads());
  write_text(out_path(cfg, "nonvanish.csv"), survey_csv(cfg, s).str());
  json summary = survey_json(cfg, s);
  summary["fejer"] = fejer_json(fejer_bounds(cfg, fam));
  summary["config_hash"] = cfg.hash();
  write_text(out_path(cfg, "nonvanish_summary.json"), summary.dump(2) + "\n");
  write_text(out_path(cfg, "nonvanish.svg"), central_svg(s));
  return s.failures.empty() ? kExitOk : kExitPartial;
}

int cmd_report(const RunConfig& cfg) {
  const auto fam = load_family(cfg);
  const auto pair = MellinPair{kernel_by_name(cfg.kernel)};
  const DensityIntegrand B(cfg.X, cfg.v);

  json r;
  r["schema_version"] = kReportSchemaVersion;
  r["tool"] = {{"name", "lowzero"}, {"version", kToolVersion}};
  r["cache_version"] = cfg.cache_version;
  r["config_hash"] = cfg.hash();
  r["config"] = cfg.to_json();
  r["family"] = {{"X", cfg.X},
                 {"v", cfg.v},
                 {"T", cfg.T},
                 {"x_star", fam.x_star()},
                 {"zeros", fam.gammas.size()},
                 {"central_flags", fam.central_flags}};

  progress("form factor");
  const auto g = form_factor_grid(fam, pair, cfg.alphas());
  json ff = json::array();
  for (std::size_t i = 0; i < g.alphas.size(); ++i)
    ff.push_back({{"alpha", g.alphas[i]},
                  {"F", g.values[i]},
                  {"prediction", g.prediction[i]},
                  {"gap", g.values[i] - g.prediction[i]}});
  r["formfactor"] = {{"normalisation", kFormFactorNormLabel}, {"rows", ff}};

  progress("density and ratios");
  json dens = json::array();
  for (const auto& d : density_rows(cfg, fam, B))
    dens.push_back({{"tf", d.tf},
                    {"param", d.param},
                    {"empirical", d.empirical},
                    {"limit", d.limit},
                    {"ratios", d.ratios},
                    {"X_star", d.x_star}});
  r["density"] = {{"normalisation", kDensityNormLabel}, {"rows", dens}};
  json rat = json::array();
  for (const auto& row : ratios_rows(cfg, fam, B))
    rat.push_back({{"statistic", row.statistic},
                   {"empirical", row.empirical},
                   {"prediction", row.prediction},
                   {"gap", row.empirical - row.prediction}});
  r["ratios"] = {{"rows", rat}};

  std::vector<std::uint64_t> which;
  const auto ex = explicit_rows(cfg, fam, which);
  json exj = json::array();
  for (std::size_t i = 0; i < ex.size(); ++i)
    exj.push_back({{"p", which[i / kExplicitX.size()]},
                   {"x", kExplicitX[i % kExplicitX.size()]},
                   {"lhs_re", ex[i].lhs.real()},
                   {"rhs_re", ex[i].rhs.real()},
                   {"residual", ex[i].residual},
                   {"exact_residual", ex[i].exact_residual}});
  const double xd = std::sqrt(static_cast<double>(cfg.X));
  const auto diag = diagonal_diagnostic(cfg.X, cfg.v, xd, pair);
  r["explicit"] = {{"rows", exj},
                   {"diagonal", {{"x", xd},
                                 {"A1_numeric", diag.A1_numeric},
                                 {"A1_main", diag.A1_main},
                                 {"scaled_gap", diag.scaled_gap}}}};

  progress("central values");
  const auto s = survey_central_values(cfg.X, cfg.v, cfg.worker_threads());
  json nv = survey_json(cfg, s);
  nv["fejer"] = fejer_json(fejer_bounds(cfg, fam));
  nv["mellin_half_identity"] = mellin_half_identity(pair.spec);
  r["nonvanish"] = nv;

  write_text(out_path(cfg, "report.json"), r.dump(2) + "\n");
  return s.failures.empty() ? kExitOk : kExitPartial;
}

int run_command(const std::string& name, const RunConfig& cfg) {
  try {
    if (name == "sieve") return cmd_sieve(cfg);
    if (name == "zeros") return cmd_zeros(cfg);
    if (name == "formfactor") return cmd_formfactor(cfg);
    if (name == "density") return cmd_density(cfg);
    if (name == "ratios") return cmd_ratios(cfg);
    if (name == "nonvanish") return cmd_nonvanish(cfg);
    if (name == "report") return cmd_report(cfg);
    std::cerr << "unknown subcommand " << name << '\n';
    return kExitUsage;
  } catch (const MissingCacheError& e) {
    std::string list = "p\n";
    for (auto p : e.missing()) list += std::to_string(p) + "\n";
    const auto path = out_path(cfg, "missing_primes.csv");
    try {
      write_text(path, list);
    } catch (const std::exception&) {
    }
    std::cerr << "error: zero cache is missing " << e.missing().size() << " primes (first: " << e.missing().front()
              << "); full list in " << path.string() << "\nrun `lowzero zeros` with the same --X, --v, --T and "
              << "--cache-dir first\n";
    return kExitMissingCache;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace lowzero::app
