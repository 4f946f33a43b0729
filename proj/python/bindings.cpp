#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thinlaw/charlier.hpp"
#include "thinlaw/classes.hpp"
#include "thinlaw/divergences.hpp"
#include "thinlaw/errors.hpp"
#include "thinlaw/fisher.hpp"
#include "thinlaw/harness.hpp"
#include "thinlaw/io.hpp"
#include "thinlaw/markov.hpp"
#include "thinlaw/thinning.hpp"

namespace py = pybind11;
using namespace thinlaw;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict report_to_py(const ExperimentReport& r) {
  py::dict d;
  d["columns"] = r.columns;
  d["rows"] = r.rows;
  d["metadata"] = json_to_py(r.metadata);
  d["csv"] = to_csv(r);
  return d;
}

py::tuple estimate(const Estimate& e) { return py::make_tuple(e.value, e.tail_error); }

}  // namespace

PYBIND11_MODULE(_thinlaw, m) {
  m.doc() = "Thinning of integer-valued distributions";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_RuntimeError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  py::class_<Pmf>(m, "Pmf")
      .def(py::init<std::vector<double>, double>(), py::arg("probs"), py::arg("tail") = 0.0)
      .def_static("point_mass", &Pmf::point_mass)
      .def_property_readonly("probs",
                             [](const Pmf& p) {
                               return std::vector<double>(p.probs().begin(), p.probs().end());
                             })
      .def_property_readonly("tail", &Pmf::tail)
      .def("__len__", &Pmf::size)
      .def("__getitem__", [](const Pmf& p, std::size_t x) { return p[x]; })
      .def("mean", [](const Pmf& p) { return summary_stats(p).mean; })
      .def("variance", [](const Pmf& p) { return summary_stats(p).variance; })
      .def("__repr__", [](const Pmf& p) {
        return "Pmf(size=" + std::to_string(p.size()) + ", tail=" + format_number(p.tail()) + ")";
      });

  m.def("family", [](const std::string& spec, double eps_tail) {
    return materialize(parse_family(spec), eps_tail);
  }, py::arg("spec"), py::arg("eps_tail") = kDefaultEpsTail,
        "Materialize a family spec such as 'poisson:2' or 'binomial:5,0.4'.");
  m.def("convolve", &convolve);
  m.def("n_fold", &n_fold);
  m.def("entropy", [](const Pmf& p) { return entropy(p).value; });
  m.def("factorial_moments", &factorial_moments);

  m.def("thin", &thin, py::arg("p"), py::arg("alpha"));
  m.def("compound_thin", &compound_thin, py::arg("p"), py::arg("alpha"), py::arg("q"));
  m.def("compound_poisson", &compound_poisson, py::arg("lam"), py::arg("q"),
        py::arg("eps_tail") = kDefaultEpsTail, py::arg("min_size") = 0);

  m.def("kl", [](const Pmf& p, const Pmf& q) { return kl(p, q).value; });
  m.def("tv", [](const Pmf& p, const Pmf& q) { return tv(p, q).value; });
  m.def("chi2", [](const Pmf& p, const Pmf& q) { return chi2(p, q).value; });
  m.def("kl_poisson", [](const Pmf& p, double l) { return estimate(kl_poisson(p, l)); });
  m.def("tv_poisson", [](const Pmf& p, double l) { return estimate(tv_poisson(p, l)); });
  m.def("chi2_poisson", [](const Pmf& p, double l) { return estimate(chi2_poisson(p, l)); });
  m.def("bound_variance", [](const Pmf& p, double a, double l) {
    return json_to_py(to_json(bound_variance(p, a, l)));
  });
  m.def("bound_llogl", [](const Pmf& p, double a, double l) {
    return json_to_py(to_json(bound_llogl(p, a, l)));
  });
  m.def("bound_tv", [](const Pmf& p, std::size_t n) { return json_to_py(to_json(bound_tv(p, n))); });

  m.def("charlier_eval", &charlier_eval, py::arg("k"), py::arg("lam"), py::arg("x"));
  m.def("charlier_moment", &charlier_moment, py::arg("p"), py::arg("lam"), py::arg("k"));
  m.def("lr_coefficients", [](const Pmf& p, double l, std::size_t kmax) {
    return lr_coefficients(p, l, kmax).coeffs;
  }, py::arg("p"), py::arg("lam"), py::arg("kmax") = kDefaultCharlierKmax);
  m.def("chi2_series", [](const std::vector<double>& coeffs, double lam, double alpha) {
    CharlierCoeffs c;
    c.lambda = lam;
    c.coeffs = coeffs;
    c.kmax = coeffs.empty() ? 0 : coeffs.size() - 1;
    return chi2_series(c, alpha);
  });

  m.def("u_operator", &u_operator, py::arg("p"), py::arg("alpha"), py::arg("lam"),
        py::arg("eps_tail") = kChainEpsTail);
  m.def("transition_row", &transition_row, py::arg("i"), py::arg("t"), py::arg("lam"),
        py::arg("eps_tail") = kChainEpsTail);

  m.def("score", [](const Pmf& p) { return score(p).rho; });
  m.def("k_info", &k_info);
  m.def("s_info", &s_info);

  m.def("is_ulc", [](const Pmf& p) { return json_to_py(to_json(is_ulc(p))); });
  m.def("is_pb", [](const Pmf& p, double l, std::size_t k) {
    return json_to_py(to_json(is_pb(p, l, k)));
  }, py::arg("p"), py::arg("lam"), py::arg("kmax") = kDefaultClassKmax);
  m.def("is_ub", [](const Pmf& p, double l, std::size_t k) {
    return json_to_py(to_json(is_ub(p, l, k)));
  }, py::arg("p"), py::arg("lam"), py::arg("kmax") = kDefaultClassKmax);
  m.def("altsum_pmf", [](const std::vector<double>& fm, std::size_t x, std::size_t mm) {
    const auto r = altsum_pmf(fm, x, mm);
    return py::make_tuple(r.value, r.side == BracketSide::Upper ? "upper" : "lower");
  });

  m.def("ltn_iid", [](const std::string& spec, const std::vector<double>& n_grid) {
    return report_to_py(ltn_iid(parse_family(spec), n_grid));
  });
  m.def("rate_experiment", [](const std::string& spec, const std::vector<double>& n_grid) {
    return report_to_py(rate_experiment(parse_family(spec), n_grid));
  });
  m.def("chain_experiment", [](const std::string& spec, double lam,
                               const std::vector<double>& t_grid) {
    return report_to_py(chain_experiment(parse_family(spec), lam, t_grid));
  });
  m.def("compound_experiment", [](const std::string& spec, const Pmf& q,
                                  const std::vector<double>& n_grid) {
    return report_to_py(compound_experiment(parse_family(spec), q, n_grid));
  });
}
