#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "nodalgauge/domains.hpp"
#include "nodalgauge/ergodic.hpp"
#include "nodalgauge/field.hpp"
#include "nodalgauge/kostlan.hpp"
#include "nodalgauge/montecarlo.hpp"

namespace py = pybind11;
using namespace nodalgauge;

namespace {

DomainSpec make_domain(const std::string& shape, double eps) {
  DomainSpec d{cli::parse_shape(shape), eps};
  d.validate();
  return d;
}

LineSpec make_line(const std::string& text) {
  auto line = cli::parse_line(text);
  line.validate();
  return line;
}

py::array_t<int> modes_array(const std::vector<WaveVector>& modes) {
  py::array_t<int> out({static_cast<py::ssize_t>(modes.size()), py::ssize_t{2}});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < modes.size(); ++i) {
    m(i, 0) = modes[i].k;
    m(i, 1) = modes[i].l;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_nodalgauge, m) {
  m.doc() = "Expected zero densities and pattern sizes of Gaussian random cosine series";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<cli::UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<DomainSpec>(m, "Domain")
      .def(py::init(&make_domain), py::arg("shape"), py::arg("eps"),
           "Scaled Fourier domain, e.g. Domain('ring:0.7', 0.01).")
      .def_readonly("eps", &DomainSpec::epsilon);

  m.def("alpha_plus", &alpha_plus, py::arg("gamma"));
  m.def("alpha_minus", &alpha_minus, py::arg("gamma"));

  m.def("modes", [](const DomainSpec& d) { return modes_array(enumerate_modes(d)); }, py::arg("domain"),
        "Lattice points (k, l) as an (n, 2) array, lexicographic.");
  m.def("strong_set", [](double eps, double gamma, double fprime) {
    return modes_array(strong_set_from_spectrum({eps, fprime, gamma}));
  }, py::arg("eps"), py::arg("gamma"), py::arg("fprime") = 1.0);
  m.def("analytic_measure", [](const std::string& shape, int p, int q) {
    return analytic_measure(cli::parse_shape(shape), {p, q});
  }, py::arg("shape"), py::arg("p") = 0, py::arg("q") = 0);
  m.def("correction_coefficient", [](const std::string& shape, bool vertical) {
    return correction_coefficient(cli::parse_shape(shape),
                                  vertical ? WeightSpec::vertical() : WeightSpec::horizontal());
  }, py::arg("shape"), py::arg("vertical") = false);

  m.def("sample_coefficients", [](const DomainSpec& d, std::uint64_t seed) {
    return sample_field(d, seed).coeffs;
  }, py::arg("domain"), py::arg("seed"));
  m.def("evaluate", [](const DomainSpec& d, std::uint64_t seed, double x, double y) {
    return evaluate(sample_field(d, seed), x, y);
  }, py::arg("domain"), py::arg("seed"), py::arg("x"), py::arg("y"));
  m.def("grid", [](const DomainSpec& d, std::uint64_t seed, int n) {
    const auto g = evaluate_grid(sample_field(d, seed), n);
    py::array_t<double> out({n, n});
    std::copy(g.values.begin(), g.values.end(), out.mutable_data());
    return out;
  }, py::arg("domain"), py::arg("seed"), py::arg("n"),
        "Field values at (i/(n-1), j/(n-1)); entry [i, j] has x index i.");

  m.def("density", [](const DomainSpec& d, const std::string& line, std::vector<double> params, int threads) {
    const auto prof = KostlanEngine(d).profile(make_line(line), params, threads);
    return py::array_t<double>(static_cast<py::ssize_t>(prof.deltas.size()), prof.deltas.data());
  }, py::arg("domain"), py::arg("line"), py::arg("params"), py::arg("threads") = 1);
  m.def("expected_zero_count", [](const DomainSpec& d, const std::string& line, int panels, int threads) {
    return KostlanEngine(d).expected_zero_count(make_line(line), panels, threads);
  }, py::arg("domain"), py::arg("line"), py::arg("panels") = 2000, py::arg("threads") = 1);
  m.def("pattern_size", [](const DomainSpec& d, const std::string& line, int panels, int threads) {
    return KostlanEngine(d).pattern_size(make_line(line), panels, threads);
  }, py::arg("domain"), py::arg("line"), py::arg("panels") = 2000, py::arg("threads") = 1);

  m.def("count_zeros", [](const DomainSpec& d, std::uint64_t seed, const std::string& line, double step) {
    return count_zeros_on_line(sample_field(d, seed), make_line(line), step);
  }, py::arg("domain"), py::arg("seed"), py::arg("line"), py::arg("step"));
  m.def("montecarlo", [](const DomainSpec& d, bool vertical, int lines, int realizations,
                         std::uint64_t seed, double step_frac, int threads) {
    const LineFamily family{vertical ? LineFamily::Orientation::vertical : LineFamily::Orientation::horizontal,
                            lines};
    const auto r = sample_report(d, family, realizations, seed, d.epsilon / step_frac, threads);
    py::dict out;
    out["counts"] = r.counts;
    out["line_params"] = r.line_params;
    out["realization"] = r.realization;
    out["mean"] = r.mean;
    out["std_error"] = r.std_error;
    out["predicted"] = r.predicted;
    return out;
  }, py::arg("domain"), py::arg("vertical") = true, py::arg("lines") = 200, py::arg("realizations") = 30,
        py::arg("seed") = 1, py::arg("step_frac") = 50.0, py::arg("threads") = 1);

  m.def("birkhoff_cos2_average", &birkhoff_cos2_average, py::arg("x"), py::arg("n"));
  m.def("weighted_cos2_average", &weighted_cos2_average, py::arg("x"), py::arg("n"), py::arg("p"));
  m.def("rational_exact", &rational_exact, py::arg("n"), py::arg("big_n"));
}
