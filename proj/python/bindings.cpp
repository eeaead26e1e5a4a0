#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wpa/construction.hpp"
#include "wpa/errors.hpp"
#include "wpa/potential.hpp"
#include "wpa/serialize.hpp"

namespace py = pybind11;
using namespace wpa;

namespace {

// JSON documents cross the boundary as Python dicts.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ComplexPolynomial poly(const std::vector<Complex>& c) { return ComplexPolynomial(c); }

}  // namespace

PYBIND11_MODULE(_wpa, m) {
  m.doc() = "Weighted polynomial approximation toolkit";

  static py::exception<Error> base(m, "WpaError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigurationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      base(e.what());
    }
  });

  py::class_<CompactFamily>(m, "CompactFamily")
      .def_static("disc", &CompactFamily::disc, py::arg("x0"))
      .def_static("segment", &CompactFamily::segment, py::arg("x0"))
      .def_static("arc", &CompactFamily::arc, py::arg("theta0"))
      .def_static("sampled", &CompactFamily::sampled, py::arg("points"))
      .def_property_readonly("name", &CompactFamily::name)
      .def_property_readonly("parameter", &CompactFamily::parameter)
      .def("validate", &CompactFamily::validate)
      .def("contains", &CompactFamily::contains, py::arg("z"), py::arg("tol") = 1e-9)
      .def("__repr__", [](const CompactFamily& f) { return "<CompactFamily " + f.name() + ">"; });

  py::class_<RationalExponent>(m, "RationalExponent")
      .def(py::init<int, int>(), py::arg("sigma"), py::arg("tau"))
      .def_readonly("sigma", &RationalExponent::sigma)
      .def_readonly("tau", &RationalExponent::tau)
      .def_property_readonly("alpha", &RationalExponent::alpha);

  py::class_<DomainSpec>(m, "DomainSpec")
      .def_static("of", &DomainSpec::of, py::arg("family"), py::arg("inflation"))
      .def_static("disc_radius", &DomainSpec::disc_radius, py::arg("x0"), py::arg("rho"))
      .def_readonly("inflation", &DomainSpec::inflation)
      .def("validate", &DomainSpec::validate);

  py::class_<ExteriorMap>(m, "ExteriorMap")
      .def_static("from_domain", &ExteriorMap::from_domain)
      .def_property_readonly("kind", &ExteriorMap::kind_name)
      .def("forward", &ExteriorMap::forward, py::arg("z"))
      .def("inverse",
           [](const ExteriorMap& map, Complex w) -> py::object {
             auto r = map.inverse(w);
             if (r.infinite) return py::float_(std::numeric_limits<double>::infinity());
             return py::cast(r.value);
           },
           py::arg("w"), "Returns float('inf') for the point at infinity.")
      .def("boundary_derivative_abs", &ExteriorMap::boundary_derivative_abs, py::arg("zeta"))
      .def("green_infinity", &ExteriorMap::green_infinity, py::arg("z"))
      .def_property_readonly("phi_zero", &ExteriorMap::phi_zero)
      .def_property_readonly("phi_infinity", &ExteriorMap::phi_infinity);

  m.def("boundary_sample", &boundary_sample, py::arg("domain"), py::arg("m"));
  m.def("diam_and_dist",
        [](const CompactFamily& f, Complex z) {
          auto d = diam_and_dist(f, z);
          return py::make_tuple(d.diam, d.dist);
        },
        py::arg("family"), py::arg("z"));
  m.def("r_k_alpha", &r_k_alpha, py::arg("family"), py::arg("exp"), py::arg("M"));
  m.def("k_alpha_member", &k_alpha_member, py::arg("family"), py::arg("exp"), py::arg("M"), py::arg("z"));

  m.def("poisson_kernel", &poisson_kernel, py::arg("z"), py::arg("zeta"));
  m.def("pv_criterion",
        [](const DomainSpec& d, double alpha, int samples) { return to_py(to_json(pv_criterion(d, alpha, samples))); },
        py::arg("domain"), py::arg("alpha"), py::arg("m") = 4096);
  m.def("alpha_threshold", &alpha_threshold, py::arg("domain"), py::arg("m") = 4096);
  m.def("harnack_alpha_bound", &harnack_alpha_bound, py::arg("domain"), py::arg("m") = 4096);
  m.def("alpha_k",
        [](const CompactFamily& f, const std::string& method, int samples) {
          if (method != "closed_form" && method != "limit") throw ConfigurationError("method: closed_form or limit");
          return alpha_k(f, method == "limit" ? AlphaMethod::limit : AlphaMethod::closed_form, samples);
        },
        py::arg("family"), py::arg("method") = "limit", py::arg("m") = 4096);
  m.def("m_k",
        [](const CompactFamily& f, const std::string& method) {
          if (method != "closed_form" && method != "numeric") throw ConfigurationError("method: closed_form or numeric");
          auto r = m_k(f, method == "numeric" ? MkMethod::numeric : MkMethod::closed_form);
          return py::make_tuple(r.value, r.argmax, r.fell_back_to_numeric);
        },
        py::arg("family"), py::arg("method") = "closed_form");
  m.def("solynin_phi", &solynin_phi, py::arg("x"));
  m.def("solynin_bound", &solynin_bound, py::arg("family"), py::arg("z"));

  m.def("k_samples", &k_samples, py::arg("family"), py::arg("m"));
  m.def("weighted_fit",
        [](const std::vector<Complex>& samples, const RationalExponent& e, int n, const std::vector<Complex>& target) {
          return to_py(to_json(weighted_fit(samples, e, n, poly(target)), false));
        },
        py::arg("samples"), py::arg("exp"), py::arg("n"), py::arg("target"),
        "target and the returned Q are coefficient lists c0, c1, ...");

  m.def("pi_poly", [](int n, double C, int s, int t) { return pi_poly(n, C, s, t).coeffs(); }, py::arg("n"),
        py::arg("C"), py::arg("sigma"), py::arg("tau"));
  m.def("pi_partial_sum_at_one_exact",
        [](int n, int s, int t, int j) {
          return py::int_(py::str(pi_partial_sum_at_one_exact(n, s, t, j).str()));
        },
        py::arg("n"), py::arg("sigma"), py::arg("tau"), py::arg("j"));
  m.def("choose_C", &choose_C, py::arg("M"), py::arg("sigma"), py::arg("tau"), py::arg("r"), py::arg("L_samples"));
  m.def("interval_samples", &interval_samples, py::arg("a"), py::arg("b"), py::arg("m"));

  m.def("lemma_construct",
        [](const CompactFamily& f, const RationalExponent& e, double eps, const std::vector<Complex>& target, int N,
           double B, double r, const std::vector<Complex>& L, const std::vector<Complex>& L_dense) {
          LemmaProblem pb;
          pb.family = f;
          pb.exp = e;
          pb.epsilon = eps;
          pb.target = Target::from_polynomial(poly(target));
          pb.N = N;
          pb.B = B;
          pb.r = r;
          pb.L_samples = L;
          pb.L_dense = L_dense;
          auto res = lemma_construct(pb);
          return to_py(json{{"certificate", to_json(res.cert)}, {"P", to_json(res.P)}});
        },
        py::arg("family"), py::arg("exp"), py::arg("epsilon"), py::arg("target"), py::arg("N"), py::arg("B"),
        py::arg("r"), py::arg("L_samples"), py::arg("L_dense") = std::vector<Complex>{});
  m.def("stage_build",
        [](const CompactFamily& f, const RationalExponent& e, const std::vector<std::vector<Complex>>& targets,
           int stages, const std::string& mode) {
          if (mode != "halfspace" && mode != "growing") throw ConfigurationError("mode: halfspace or growing");
          std::vector<ComplexPolynomial> ts;
          for (const auto& t : targets) ts.push_back(poly(t));
          auto res = stage_build(f, e, ts, stages, mode == "halfspace" ? StageMode::halfspace : StageMode::growing_coeffs);
          return to_py(to_json(res));
        },
        py::arg("family"), py::arg("exp"), py::arg("targets"), py::arg("stages"), py::arg("mode") = "halfspace");
}
