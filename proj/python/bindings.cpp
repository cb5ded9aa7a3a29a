#include <optional>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specquant/error.hpp"
#include "specquant/inference.hpp"
#include "specquant/models.hpp"
#include "specquant/quantile.hpp"
#include "specquant/sample.hpp"
#include "specquant/spectral.hpp"

namespace py = pybind11;
using namespace specquant;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<SinusoidAtom> atoms_from(const std::vector<std::pair<double, double>>& atoms) {
  std::vector<SinusoidAtom> out;
  for (const auto& [amplitude, frequency] : atoms) out.push_back({amplitude, frequency});
  return out;
}

std::vector<double> grid_or_default(const std::optional<std::vector<double>>& grid, std::size_t n) {
  return grid ? *grid : symmetric_grid(n);
}

LagWindow window_for(const std::string& name, std::optional<std::size_t> m, std::size_t n) {
  return make_window(name, m.value_or(default_bandwidth(n)));
}

py::dict estimate_dict(const QuantileEstimate& e) {
  py::dict d;
  d["p"] = e.p;
  d["lambda_hat"] = e.lambda_hat;
  d["kind"] = to_string(e.kind);
  d["grid_step"] = e.grid_step;
  d["grid_index"] = e.grid_index;
  d["total_mass_hat"] = e.total_mass_hat;
  d["n"] = e.n;
  d["m"] = e.window ? py::cast(e.window->m) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_specquant, m) {
  m.doc() = "Spectral distribution quantiles and the frequency-domain quantile test.";

  auto argument_error = py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", argument_error.ptr());
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ArithmeticError);
  py::exception<FormulaInconsistencyError>(m, "FormulaInconsistencyError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const FormulaInconsistencyError& e) {
      py::object type = py::module_::import("specquant._specquant").attr("FormulaInconsistencyError");
      py::object err = type(e.what());
      err.attr("bracket") = e.bracket();
      err.attr("value") = e.value();
      PyErr_SetObject(type.ptr(), err.ptr());
    }
  });

  py::class_<SpectralModel>(m, "SpectralModel")
      .def_static(
          "white_noise",
          [](double variance, const std::vector<std::pair<double, double>>& atoms) {
            return SpectralModel(WhiteNoise{variance}, atoms_from(atoms));
          },
          py::arg("variance") = 1.0, py::arg("atoms") = std::vector<std::pair<double, double>>{})
      .def_static(
          "ma1",
          [](double theta, double variance, const std::vector<std::pair<double, double>>& atoms) {
            return SpectralModel(Ma1{theta, variance}, atoms_from(atoms));
          },
          py::arg("theta"), py::arg("variance") = 1.0,
          py::arg("atoms") = std::vector<std::pair<double, double>>{})
      .def_static(
          "ar1",
          [](double coeff, double variance, const std::vector<std::pair<double, double>>& atoms) {
            return SpectralModel(Ar1{coeff, variance}, atoms_from(atoms));
          },
          py::arg("coeff"), py::arg("variance") = 1.0,
          py::arg("atoms") = std::vector<std::pair<double, double>>{})
      .def_property_readonly("tag", &SpectralModel::tag)
      .def_property_readonly("variance", &SpectralModel::variance)
      .def("scaled", &SpectralModel::scaled, py::arg("factor"))
      .def("__repr__", [](const SpectralModel& s) { return "SpectralModel(" + s.tag() + ")"; });

  m.def("spectral_density", &spectral_density, py::arg("model"), py::arg("omega"));
  m.def("model_autocovariance", &model_autocovariance, py::arg("model"), py::arg("lag"));
  m.def(
      "spectral_cdf",
      [](const SpectralModel& model, double omega) { return spectral_cdf(spectral_measure(model), omega); },
      py::arg("model"), py::arg("omega"));
  m.def(
      "true_quantile", [](const SpectralModel& model, double p) { return true_quantile(spectral_measure(model), p); },
      py::arg("model"), py::arg("p"));

  m.def(
      "simulate",
      [](const SpectralModel& model, std::size_t n, std::uint64_t seed) {
        return to_array(generate(model, n, seed).values);
      },
      py::arg("model"), py::arg("n"), py::arg("seed"));
  m.def("replicate_seed", &replicate_seed, py::arg("base_seed"), py::arg("k"));

  m.def("symmetric_grid", [](std::size_t n) { return to_array(symmetric_grid(n)); }, py::arg("n"));
  m.def("default_bandwidth", &default_bandwidth, py::arg("n"));
  m.def(
      "autocovariance",
      [](const std::vector<double>& x, std::size_t max_lag) { return to_array(autocovariance(x, max_lag)); },
      py::arg("series"), py::arg("max_lag"));
  m.def(
      "raw_periodogram",
      [](const std::vector<double>& x, const std::optional<std::vector<double>>& grid) {
        const auto pgram = raw_periodogram(x, grid_or_default(grid, x.size()));
        return py::make_tuple(to_array(pgram.grid), to_array(pgram.ordinates));
      },
      py::arg("series"), py::arg("grid") = py::none());
  m.def(
      "smoothed_density",
      [](const std::vector<double>& x, const std::string& window, std::optional<std::size_t> bandwidth,
         const std::optional<std::vector<double>>& grid) {
        const auto pgram = smoothed_density(x, window_for(window, bandwidth, x.size()), grid_or_default(grid, x.size()));
        return py::make_tuple(to_array(pgram.grid), to_array(pgram.ordinates));
      },
      py::arg("series"), py::arg("window") = "bartlett", py::arg("m") = py::none(), py::arg("grid") = py::none());

  m.def(
      "estimate_raw",
      [](const std::vector<double>& x, double p, const std::optional<std::vector<double>>& grid) {
        return estimate_dict(estimate_raw(x, p, grid_or_default(grid, x.size())));
      },
      py::arg("series"), py::arg("p"), py::arg("grid") = py::none());
  m.def(
      "estimate_smoothed",
      [](const std::vector<double>& x, double p, const std::string& window, std::optional<std::size_t> bandwidth,
         const std::optional<std::vector<double>>& grid) {
        return estimate_dict(
            estimate_smoothed(x, p, window_for(window, bandwidth, x.size()), grid_or_default(grid, x.size())));
      },
      py::arg("series"), py::arg("p"), py::arg("window") = "bartlett", py::arg("m") = py::none(),
      py::arg("grid") = py::none());

  m.def(
      "mc_sigma",
      [](const SpectralModel& null_model, double p, std::size_t n, std::size_t replications, std::uint64_t base_seed,
         const std::string& window, std::optional<std::size_t> bandwidth) {
        return mc_sigma(null_model, p, n, window_for(window, bandwidth, n), replications, base_seed).sigma;
      },
      py::arg("null_model"), py::arg("p"), py::arg("n"), py::arg("replications") = 100, py::arg("base_seed") = 0,
      py::arg("window") = "bartlett", py::arg("m") = py::none());
  m.def(
      "quantile_test",
      [](const std::vector<double>& x, double p, const SpectralModel& null_model, double alpha,
         std::size_t sigma_replications, std::uint64_t base_seed, const std::string& window,
         std::optional<std::size_t> bandwidth) {
        const auto w = window_for(window, bandwidth, x.size());
        const auto sigma = mc_sigma(null_model, p, x.size(), w, sigma_replications, base_seed);
        const auto r = quantile_test(x, p, null_model, w, alpha, sigma);
        py::dict d;
        d["statistic"] = r.statistic;
        d["critical"] = r.critical;
        d["alpha"] = r.alpha;
        d["reject"] = r.reject;
        d["p"] = r.p_quantile;
        d["lambda_null"] = r.lambda_null;
        d["lambda_hat"] = r.lambda_hat;
        d["sigma"] = r.sigma_used.sigma;
        return d;
      },
      py::arg("series"), py::arg("p"), py::arg("null_model"), py::arg("alpha") = 0.1,
      py::arg("sigma_replications") = 100, py::arg("base_seed") = 0, py::arg("window") = "bartlett",
      py::arg("m") = py::none());
  m.def(
      "power_study",
      [](const SpectralModel& null_model, const SpectralModel& alt_model, double p, std::size_t n, double alpha,
         std::size_t replications, std::uint64_t base_seed, std::size_t sigma_replications) {
        PowerStudyOptions options;
        options.sigma_replications = sigma_replications;
        return power_study(null_model, alt_model, p, n, alpha, replications, base_seed, options);
      },
      py::arg("null_model"), py::arg("alt_model"), py::arg("p"), py::arg("n"), py::arg("alpha") = 0.1,
      py::arg("replications") = 100, py::arg("base_seed") = 0, py::arg("sigma_replications") = 100);
  m.def(
      "plugin_variance_bracket",
      [](const SpectralModel& null_model, double p) { return plugin_variance_bracket(null_model, p); },
      py::arg("null_model"), py::arg("p"));
  m.def(
      "plugin_sigma_gaussian",
      [](const SpectralModel& null_model, double p) { return plugin_sigma_gaussian(null_model, p).sigma; },
      py::arg("null_model"), py::arg("p"));
  m.def("normal_quantile", &normal_quantile, py::arg("u"));
}
