// Python bindings for the sheetwalk core: random streams, telegraph paths,
// the coupled walk/Brownian pair, the approximating sheet with its error
// decomposition, and the Orlicz/maximal-inequality diagnostics.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sheetwalk/coupling.hpp"
#include "sheetwalk/maximal.hpp"
#include "sheetwalk/rates.hpp"
#include "sheetwalk/rng.hpp"
#include "sheetwalk/sheet.hpp"
#include "sheetwalk/stats.hpp"
#include "sheetwalk/transport.hpp"

namespace py = pybind11;
using namespace sheetwalk;

PYBIND11_MODULE(_sheetwalk, m) {
  m.doc() =
      "Uniform-transport (telegraph) approximations of the Brownian sheet: "
      "coupled simulation, error decomposition, and tail diagnostics.";
  m.attr("__version__") = "0.1.0";

  // -- randomness -----------------------------------------------------------
  py::class_<RngStream>(m, "RngStream",
                        "Splittable counter-based stream keyed by "
                        "(master_seed, path).")
      .def(py::init<std::uint64_t, std::vector<std::uint64_t>>(),
           py::arg("master_seed"), py::arg("path") = std::vector<std::uint64_t>{})
      .def_property_readonly("master_seed", &RngStream::master_seed)
      .def_property_readonly("path",
                             [](const RngStream& s) { return s.path(); })
      .def(
          "child",
          [](const RngStream& s, const std::vector<std::uint64_t>& suffix) {
            return derive_stream(s.master_seed(), [&] {
              std::vector<std::uint64_t> path = s.path();
              path.insert(path.end(), suffix.begin(), suffix.end());
              return path;
            }());
          },
          py::arg("suffix"),
          "Stream for path + suffix; does not advance this stream.")
      .def("next_u64", &RngStream::next_u64)
      .def("next_uniform", &RngStream::next_uniform)
      .def("next_normal", &RngStream::next_normal)
      .def("next_exponential", &RngStream::next_exponential)
      .def("next_sign", &RngStream::next_sign);
  m.def("derive_stream", &derive_stream, py::arg("master_seed"),
        py::arg("path"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("normal_cdf", &normal_cdf, py::arg("x"));

  // -- telegraph transport --------------------------------------------------
  py::class_<TelegraphPath>(m, "TelegraphPath",
                            "One telegraph trajectory: value(t) = sign * "
                            "n^{-1/2} * I(n t).")
      .def_readonly("n", &TelegraphPath::n)
      .def_readonly("sign", &TelegraphPath::sign)
      .def_readonly("events", &TelegraphPath::events)
      .def_readonly("cum_integral", &TelegraphPath::cum_integral);
  m.def("build_telegraph", &build_telegraph, py::arg("n"), py::arg("stream"));
  m.def("eval_transport", &eval_transport, py::arg("path"), py::arg("t"));
  m.def("eval_transport_grid", &eval_transport_grid, py::arg("path"),
        py::arg("t_grid"));
  m.def("sup_abs_transport", &sup_abs_transport, py::arg("path"));

  // -- coupled walk / Brownian pair ----------------------------------------
  py::class_<CoupledBmPair>(m, "CoupledBmPair",
                            "Telegraph walk and Brownian motion on shared "
                            "randomness, pinned at the even-indexed events.")
      .def_readonly("path", &CoupledBmPair::path)
      .def_readonly("t_grid", &CoupledBmPair::t_grid)
      .def_readonly("transport_values", &CoupledBmPair::transport_values)
      .def_readonly("bm_values", &CoupledBmPair::bm_values)
      .def_readonly("skeleton_times", &CoupledBmPair::skeleton_times);
  m.def("couple_bm", &couple_bm, py::arg("path"), py::arg("stream"),
        py::arg("t_grid"));
  m.def("sup_distance", &sup_distance, py::arg("pair"));
  m.def("bm_values_on", &bm_values_on, py::arg("pair"), py::arg("grid"));
  m.def("uniform_grid", &uniform_grid, py::arg("points"));

  py::class_<BmRateRow>(m, "BmRateRow")
      .def_readonly("n", &BmRateRow::n)
      .def_readonly("replicas", &BmRateRow::replicas)
      .def_readonly("median", &BmRateRow::median)
      .def_readonly("q90", &BmRateRow::q90)
      .def_readonly("q99", &BmRateRow::q99);
  m.def("bm_rate_experiment", &bm_rate_experiment, py::arg("n_list"),
        py::arg("replicas"), py::arg("master_seed"), py::arg("grid_size"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("bm_sup_samples", &bm_sup_samples, py::arg("n"), py::arg("n_index"),
        py::arg("replicas"), py::arg("master_seed"), py::arg("grid_size"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

  // -- approximating sheet --------------------------------------------------
  py::class_<SheetConfig>(m, "SheetConfig",
                          "Strip layout: K = floor(n^lambda) strips of width "
                          "n^-lambda, m sub-strips each.")
      .def(py::init([](std::uint64_t n, double lambda, int m, int t_grid_size) {
             SheetConfig c;
             c.n = n;
             c.lambda = lambda;
             c.m = m;
             c.t_grid_size = t_grid_size;
             return c;
           }),
           py::arg("n") = 1024, py::arg("lambda_") = 0.19, py::arg("m") = 8,
           py::arg("t_grid_size") = 1024)
      .def_readwrite("n", &SheetConfig::n)
      .def_readwrite("lambda_", &SheetConfig::lambda)
      .def_readwrite("m", &SheetConfig::m)
      .def_readwrite("t_grid_size", &SheetConfig::t_grid_size)
      .def("strip_count", &SheetConfig::strip_count)
      .def("strip_width", &SheetConfig::strip_width)
      .def("validate", &SheetConfig::validate);

  py::class_<SheetGrid>(m, "SheetGrid")
      .def_readonly("config", &SheetGrid::config)
      .def_readonly("s_grid", &SheetGrid::s_grid)
      .def_readonly("t_grid", &SheetGrid::t_grid)
      .def_readonly("wn_strip", &SheetGrid::wn_strip)
      .def_readonly("w_values", &SheetGrid::w_values);
  m.def("build_sheet_pair", &build_sheet_pair, py::arg("config"),
        py::arg("stream"));
  m.def("build_sheet_pair_wn_only", &build_sheet_pair_wn_only,
        py::arg("config"), py::arg("stream"));
  m.def("interp_wn", &interp_Wn, py::arg("grid"), py::arg("s"), py::arg("t"));
  m.def("sup_error", &sup_error, py::arg("grid"));

  py::class_<ErrorDecomposition>(m, "ErrorDecomposition")
      .def_readonly("p1", &ErrorDecomposition::p1)
      .def_readonly("p2", &ErrorDecomposition::p2)
      .def_readonly("p3", &ErrorDecomposition::p3);
  m.def("error_decomposition", &error_decomposition, py::arg("grid"));

  py::class_<CovarianceRow>(m, "CovarianceRow")
      .def_readonly("s1", &CovarianceRow::s1)
      .def_readonly("t1", &CovarianceRow::t1)
      .def_readonly("s2", &CovarianceRow::s2)
      .def_readonly("t2", &CovarianceRow::t2)
      .def_readonly("empirical", &CovarianceRow::empirical)
      .def_readonly("exact", &CovarianceRow::exact)
      .def_readonly("stderr", &CovarianceRow::stderr_);
  m.def("covariance_check", &covariance_check, py::arg("config"),
        py::arg("replicas"), py::arg("pairs"), py::arg("stream"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("default_covariance_pairs", &default_covariance_pairs);

  // -- rate experiment ------------------------------------------------------
  py::class_<RateExperimentConfig>(m, "RateExperimentConfig")
      .def(py::init<>())
      .def_readwrite("lambda_", &RateExperimentConfig::lambda)
      .def_readwrite("beta", &RateExperimentConfig::beta)
      .def_readwrite("alpha", &RateExperimentConfig::alpha)
      .def_readwrite("n_list", &RateExperimentConfig::n_list)
      .def_readwrite("replicas", &RateExperimentConfig::replicas)
      .def_readwrite("m", &RateExperimentConfig::m)
      .def_readwrite("t_grid_size", &RateExperimentConfig::t_grid_size)
      .def_readwrite("master_seed", &RateExperimentConfig::master_seed)
      .def("validate", &RateExperimentConfig::validate);

  py::class_<TailEstimate>(m, "TailEstimate")
      .def_readonly("n", &TailEstimate::n)
      .def_readonly("threshold", &TailEstimate::threshold)
      .def_readonly("tail", &TailEstimate::tail)
      .def_readonly("stderr", &TailEstimate::stderr_);
  py::class_<RateFit>(m, "RateFit")
      .def_readonly("slope", &RateFit::slope)
      .def_readonly("intercept", &RateFit::intercept)
      .def_readonly("stderr_slope", &RateFit::stderr_slope)
      .def_readonly("r_squared", &RateFit::r_squared);
  py::class_<SheetReplicaRecord>(m, "SheetReplicaRecord")
      .def_readonly("n", &SheetReplicaRecord::n)
      .def_readonly("replica", &SheetReplicaRecord::replica)
      .def_readonly("sup_error", &SheetReplicaRecord::sup_error)
      .def_readonly("p1", &SheetReplicaRecord::p1)
      .def_readonly("p2", &SheetReplicaRecord::p2)
      .def_readonly("p3", &SheetReplicaRecord::p3);
  py::class_<SheetRateSummaryRow>(m, "SheetRateSummaryRow")
      .def_readonly("n", &SheetRateSummaryRow::n)
      .def_readonly("median_sup", &SheetRateSummaryRow::median_sup)
      .def_readonly("q90_sup", &SheetRateSummaryRow::q90_sup)
      .def_readonly("median_p1", &SheetRateSummaryRow::median_p1)
      .def_readonly("median_p2", &SheetRateSummaryRow::median_p2)
      .def_readonly("median_p3", &SheetRateSummaryRow::median_p3);
  py::class_<SheetRateResult>(m, "SheetRateResult")
      .def_readonly("alpha_resolved", &SheetRateResult::alpha_resolved)
      .def_readonly("records", &SheetRateResult::records)
      .def_readonly("summary", &SheetRateResult::summary)
      .def_readonly("tails", &SheetRateResult::tails)
      .def_readonly("fit", &SheetRateResult::fit);
  m.def("sheet_rate_experiment", &sheet_rate_experiment, py::arg("config"),
        py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("tail_probability", &tail_probability, py::arg("errors"),
        py::arg("threshold"));
  m.def("fit_rate", &fit_rate, py::arg("points"));

  // -- Orlicz norm and maximal-tail diagnostics -----------------------------
  m.def("psi", &psi, py::arg("t"), "Young function t * max(log t, 0).");
  m.def("expected_psi_exp_gaussian", &expected_psi_exp_gaussian, py::arg("mu"));
  py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
      .def_readonly("estimate", &MonteCarloEstimate::estimate)
      .def_readonly("stderr", &MonteCarloEstimate::stderr_)
      .def_readonly("samples", &MonteCarloEstimate::samples);
  m.def("monte_carlo_expected_psi", &monte_carlo_expected_psi, py::arg("mu"),
        py::arg("samples"), py::arg("stream"),
        py::call_guard<py::gil_scoped_release>());
  py::class_<OrliczNormResult>(m, "OrliczNormResult")
      .def_readonly("mu_star", &OrliczNormResult::mu_star)
      .def_readonly("residual", &OrliczNormResult::residual)
      .def_readonly("method", &OrliczNormResult::method)
      .def_readonly("tolerance", &OrliczNormResult::tolerance);
  m.def("orlicz_norm_exp_gaussian", &orlicz_norm_exp_gaussian,
        py::arg("tolerance"));
  m.def("gaussian_tail_integral", &gaussian_tail_integral, py::arg("m"));
  m.def("gaussian_tail_closed_form", &gaussian_tail_closed_form, py::arg("m"));
  m.def("gaussian_tail_alternate_form", &gaussian_tail_alternate_form,
        py::arg("m"));

  m.def("exact_sheet_values", &exact_sheet_values, py::arg("s_pts"),
        py::arg("t_pts"), py::arg("stream"),
        "Row-major exact Brownian-sheet values at the coordinate products.");
  py::class_<ExpMeanCheck>(m, "ExpMeanCheck")
      .def_readonly("empirical", &ExpMeanCheck::empirical)
      .def_readonly("stderr", &ExpMeanCheck::stderr_)
      .def_readonly("target", &ExpMeanCheck::target)
      .def_readonly("alternate", &ExpMeanCheck::alternate);
  m.def("exp_sheet_mean_check", &exp_sheet_mean_check, py::arg("s"),
        py::arg("t"), py::arg("s2"), py::arg("t2"), py::arg("replicas"),
        py::arg("stream"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("sheet_max_samples", &sheet_max_samples, py::arg("replicas"),
        py::arg("grid_size"), py::arg("stream"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<ImkellerRow>(m, "ImkellerRow")
      .def_readonly("beta", &ImkellerRow::beta)
      .def_readonly("tail", &ImkellerRow::tail)
      .def_readonly("ratio", &ImkellerRow::ratio)
      .def_readonly("stderr", &ImkellerRow::stderr_);
  py::class_<ImkellerResult>(m, "ImkellerResult")
      .def_readonly("mu_star", &ImkellerResult::mu_star)
      .def_readonly("rows", &ImkellerResult::rows);
  m.def("imkeller_ratio_experiment", &imkeller_ratio_experiment,
        py::arg("beta_list"), py::arg("replicas"), py::arg("grid_size"),
        py::arg("stream"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  // -- small statistics helpers --------------------------------------------
  m.def("quantile", &quantile, py::arg("values"), py::arg("p"));
  m.def("median", &median, py::arg("values"));
}
