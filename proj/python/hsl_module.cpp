#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hsl/harness.hpp"

namespace py = pybind11;
using namespace hsl;

namespace {

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["check"] = r.check;
  d["m"] = r.m;
  d["k"] = r.k;
  d["mode"] = mode_name(r.mode);
  d["status"] = status_name(r.status);
  d["residual"] = r.residual;
  d["elapsed_ms"] = r.elapsed_ms;
  d["seed"] = r.seed;
  if (!r.reason.empty()) d["reason"] = r.reason;
  if (!r.detail.empty()) d["detail"] = r.detail;
  return d;
}

RunConfig make_config(const std::vector<std::pair<int, int>>& pairs, int xdeg, const std::string& mode, double tol,
                      int quad_degree, std::uint64_t seed, const std::string& perturb) {
  RunConfig cfg;
  cfg.pairs = pairs;
  cfg.xdeg = xdeg;
  cfg.mode = parse_mode(mode);
  cfg.tol = tol;
  cfg.quad_degree = quad_degree;
  cfg.seed = seed;
  if (!perturb.empty()) {
    const mpq_class f(101, 100);
    auto& o = cfg.overrides;
    if (perturb == "a_k") o.a_k = f;
    else if (perturb == "omega") o.omega = f;
    else if (perturb == "hk_constant") o.hk_constant = f;
    else if (perturb == "den_d2") o.den_d2 = f;
    else if (perturb == "den_ak") o.den_ak = f;
    else if (perturb == "den_bk") o.den_bk = f;
    else if (perturb == "den_decomposition") o.den_decomposition = f;
    else if (perturb == "den_boundary") o.den_boundary = f;
    else throw ParseError("unknown constant: " + perturb);
  }
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_hsl, mod) {
  mod.doc() = "Exact verification toolkit for the higher spin Laplace operator";

  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<SingularParameter>(mod, "SingularParameter", PyExc_ZeroDivisionError);
  py::register_exception<DimensionError>(mod, "DimensionError", PyExc_ValueError);

  mod.def("check_ids", &check_ids, "Available check identifiers.");

  mod.def(
      "verify",
      [](const std::string& check, const std::vector<std::pair<int, int>>& pairs, int xdeg, const std::string& mode,
         double tol, int quad_degree, std::uint64_t seed, const std::string& perturb) {
        RunConfig cfg = make_config(pairs, xdeg, mode, tol, quad_degree, seed, perturb);
        std::vector<std::string> ids;
        if (check != "all") ids.push_back(check);
        std::vector<CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = run_all(cfg, ids);
        }
        py::list out;
        for (const auto& r : reports) out.append(report_dict(r));
        return out;
      },
      py::arg("check") = "all", py::arg("pairs") = std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {6, 1}},
      py::arg("xdeg") = 3, py::arg("mode") = "exact", py::arg("tol") = 1e-6, py::arg("quad_degree") = 20,
      py::arg("seed") = 1, py::arg("perturb") = "",
      "Run checks over (m, k) pairs; returns one report dict per check.");

  mod.def(
      "apply",
      [](const std::string& pipeline, const std::string& f, int m, int k) {
        return to_text(apply_pipeline(parse_pipeline(pipeline, m, k), parse_radial(f, m)));
      },
      py::arg("pipeline"), py::arg("f"), py::arg("m"), py::arg("k"),
      "Apply an operator pipeline (rightmost first) to a function in polynomial text form.");

  mod.def(
      "basis",
      [](int m, int k, const std::string& space) {
        Space s = space == "Hk" ? Space::Hk : space == "Mk" ? Space::Mk : space == "uMk1" ? Space::uMk1
                                                                                        : throw ParseError("space: " + space);
        std::vector<std::string> out;
        for (const auto& e : build_basis(m, k, s).elements) out.push_back(to_text(e));
        return out;
      },
      py::arg("m"), py::arg("k"), py::arg("space") = "Hk", "Basis elements of Hk, Mk or uMk1 in polynomial text form.");

  mod.def(
      "kernel",
      [](int m, int k, const std::string& kind) {
        if (kind == "Z1" || kind == "Z2")
          return to_text(zonal_kernel(m, k, kind == "Z1" ? ReproducingKernel::Kind::Z1 : ReproducingKernel::Kind::Z2).kernel);
        KernelKind kk = kind == "Ek" ? KernelKind::Ek : kind == "Fk" ? KernelKind::Fk : kind == "Hk" ? KernelKind::Hk
                                                                                                  : throw ParseError("kernel: " + kind);
        return to_text(build_kernel(m, k, kk).value);
      },
      py::arg("m"), py::arg("k"), py::arg("kind"), "Reproducing or fundamental kernel in polynomial text form.");

  mod.def("sphere_area", [](int m) { return omega(m).str(); }, py::arg("m"), "Exact area of the unit sphere in R^m.");
  mod.def("a_k", [](int m, int k) { return a_k(m, k).str(); }, py::arg("m"), py::arg("k"));
  mod.def("hk_constant", [](int m, int k) { return hk_constant(m, k).str(); }, py::arg("m"), py::arg("k"));
  mod.def("product_gauss_table", [](int m, int degree) { return QuadratureRule::product_gauss(m, degree).table(); },
          py::arg("m"), py::arg("degree"));
}
