#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lowzero/density.hpp"
#include "lowzero/errors.hpp"
#include "lowzero/kernel.hpp"
#include "lowzero/lfunc.hpp"
#include "lowzero/nonvanish.hpp"
#include "lowzero/numth.hpp"
#include "lowzero/ratios.hpp"
#include "lowzero/testfn.hpp"
#include "lowzero/zero_cache.hpp"
#include "lowzero/zeros.hpp"

namespace py = pybind11;
using namespace lowzero;

namespace {

ZeroFamily load_family(const std::string& cache_dir, std::uint64_t X, int v, double T) {
  return ZeroFamily::from_cache(ZeroCache(cache_dir), X, v, T);
}

}  // namespace

PYBIND11_MODULE(_lowzero, m) {
  m.doc() = "Low-lying zeros of quadratic Dirichlet L-functions";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ZeroDivisionError);
  py::register_exception<MissingCacheError>(m, "MissingCacheError", PyExc_FileNotFoundError);
  py::register_exception<UncertifiedZerosError>(m, "UncertifiedZerosError", PyExc_RuntimeError);

  m.def("sieve", [](std::uint64_t X, int v) { return sieve_primes(X, v).primes; }, py::arg("X"), py::arg("v"));
  m.def("legendre", &legendre, py::arg("n"), py::arg("p"));
  m.def("li", &li, py::arg("X"));

  m.def("L", [](std::uint64_t p, cplx s) { return eval_L(QuadChar(p), s); }, py::arg("p"), py::arg("s"),
        "L(s, (./p)) for an odd prime p");
  m.def("central_value", [](std::uint64_t p) { return central_value(QuadChar(p)); }, py::arg("p"));
  m.def("hardy_Z", [](std::uint64_t p, double t) { return hardy_Z(QuadChar(p), t); }, py::arg("p"), py::arg("t"));
  m.def("tol_zero", &tol_zero, py::arg("p"));

  py::class_<ZeroList>(m, "ZeroList")
      .def_readonly("p", &ZeroList::p)
      .def_readonly("T", &ZeroList::T)
      .def_readonly("gammas", &ZeroList::gammas)
      .def_readonly("central_flag", &ZeroList::central_flag)
      .def_readonly("certified", &ZeroList::certified)
      .def_readonly("ap_count", &ZeroList::ap_count);
  m.def("zeros", [](std::uint64_t p, double T) { return find_zeros(QuadChar(p), T); }, py::arg("p"),
        py::arg("T") = kDefaultZeroHeight);

  m.def("kernel", [](const std::string& name, cplx s) { return kernel_by_name(name).K(s); }, py::arg("name"),
        py::arg("s"));
  m.def("mellin_a", [](const std::string& name, double y) { return MellinPair{kernel_by_name(name)}.a(y); },
        py::arg("name"), py::arg("y"));

  m.def("rhat", [](const std::string& tf, double param, double a) { return tf_by_name(tf, param).r_hat(a); },
        py::arg("tf"), py::arg("param"), py::arg("alpha"));
  m.def("limit_density", [](const std::string& tf, double param) { return limit_density(tf_by_name(tf, param)); },
        py::arg("tf"), py::arg("param"));

  py::class_<ZeroFamily>(m, "ZeroFamily")
      .def_static("from_cache", &load_family, py::arg("cache_dir"), py::arg("X"), py::arg("v"),
                  py::arg("T") = kDefaultZeroHeight)
      .def_readonly("X", &ZeroFamily::X)
      .def_readonly("v", &ZeroFamily::v)
      .def_readonly("T", &ZeroFamily::T)
      .def_readonly("primes", &ZeroFamily::primes)
      .def_readonly("gammas", &ZeroFamily::gammas)
      .def_readonly("central_flags", &ZeroFamily::central_flags)
      .def_property_readonly("x_star", &ZeroFamily::x_star);

  m.def(
      "populate_cache",
      [](const std::string& dir, std::uint64_t X, int v, double T, unsigned threads) {
        const auto ps = sieve_primes(X, v).primes;
        py::gil_scoped_release nogil;
        const auto st = ZeroCache(dir).populate(ps, T, threads);
        return std::make_tuple(st.hits, st.computed, st.failures);
      },
      py::arg("cache_dir"), py::arg("X"), py::arg("v"), py::arg("T") = kDefaultZeroHeight, py::arg("threads") = 1,
      "returns (hits, computed, failed primes)");

  m.def(
      "form_factor",
      [](const ZeroFamily& fam, double alpha, const std::string& kernel) {
        return form_factor(fam, alpha, kernel_by_name(kernel));
      },
      py::arg("family"), py::arg("alpha"), py::arg("kernel") = "gauss");
  m.def(
      "form_factor_prediction",
      [](double X, double alpha, const std::string& kernel) {
        return form_factor_prediction(X, alpha, MellinPair{kernel_by_name(kernel)});
      },
      py::arg("X"), py::arg("alpha"), py::arg("kernel") = "gauss");
  m.def(
      "density_empirical",
      [](const ZeroFamily& fam, const std::string& tf, double param, const std::string& kernel) {
        return one_level_density_empirical(fam, tf_by_name(tf, param), kernel_by_name(kernel)).density_normalised;
      },
      py::arg("family"), py::arg("tf"), py::arg("param"), py::arg("kernel") = "gauss");
  m.def(
      "density_prediction",
      [](std::uint64_t X, int v, const std::string& tf, double param, const std::string& kernel) {
        return kernel_density_prediction(DensityIntegrand(X, v), tf_by_name(tf, param), kernel_by_name(kernel));
      },
      py::arg("X"), py::arg("v"), py::arg("tf"), py::arg("param"), py::arg("kernel") = "gauss");

  m.def(
      "ratios_main_terms",
      [](cplx alpha, cplx beta, std::uint64_t X, int v) { return ratios_main_terms({alpha, beta, X, v}); },
      py::arg("alpha"), py::arg("beta"), py::arg("X"), py::arg("v"));
  m.def(
      "log_deriv_prediction",
      [](cplx r, std::uint64_t X, int v, bool exploratory) {
        return log_deriv_prediction(r, X, v, exploratory).value;
      },
      py::arg("r"), py::arg("X"), py::arg("v"), py::arg("exploratory") = false);
  m.def("log_deriv_empirical", &log_deriv_empirical, py::arg("r"), py::arg("X"), py::arg("v"),
        py::arg("h") = 1e-3);

  m.def(
      "nonzero_proportion",
      [](std::uint64_t X, int v, double tol_scale, unsigned threads) {
        CentralSurvey s;
        {
          py::gil_scoped_release nogil;
          s = survey_central_values(X, v, threads);
        }
        return s.nonzero_proportion(tol_scale);
      },
      py::arg("X"), py::arg("v"), py::arg("tol_scale") = 1.0, py::arg("threads") = 1);

  m.attr("CACHE_VERSION") = kCacheVersion;
  m.attr("__version__") = LOWZERO_VERSION;
}
