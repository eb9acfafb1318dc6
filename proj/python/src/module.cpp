#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <vector>

#include "adaptfv/config.hpp"
#include "adaptfv/diagnostics.hpp"
#include "adaptfv/error.hpp"
#include "adaptfv/evolve.hpp"
#include "adaptfv/runner.hpp"

namespace py = pybind11;
using namespace adaptfv;

namespace {

std::vector<double> to_list(std::span<const double> s) { return {s.begin(), s.end()}; }

CellField physical(std::vector<double> u) { return CellField(std::move(u), Frame::physical); }
CellField reference(std::vector<double> v) { return CellField(std::move(v), Frame::reference); }

} // namespace

PYBIND11_MODULE(_adaptfv, m) {
    m.doc() = "Adaptive moving-mesh finite volumes for 1D scalar conservation laws.";

    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    py::register_exception<SizeError>(m, "SizeError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<CflError>(m, "CflError", base.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<InternalError>(m, "InternalError", base.ptr());

    py::class_<Mesh1D>(m, "Mesh1D")
        .def(py::init<std::vector<double>>(), py::arg("interfaces"))
        .def_static("uniform", &Mesh1D::uniform, py::arg("a"), py::arg("b"), py::arg("n_cells"))
        .def_property_readonly("cells", &Mesh1D::cells)
        .def_property_readonly("interfaces", [](const Mesh1D& mesh) { return to_list(mesh.interfaces()); })
        .def_property_readonly("widths", &Mesh1D::widths)
        .def_property_readonly("reference_width", &Mesh1D::reference_width)
        .def("min_width", &Mesh1D::min_width)
        .def("__eq__", [](const Mesh1D& a, const Mesh1D& b) { return a == b; })
        .def("__len__", &Mesh1D::cells);

    py::class_<AdaptParams>(m, "AdaptParams")
        .def(py::init<>())
        .def_readwrite("alpha", &AdaptParams::alpha)
        .def_readwrite("smoothing_passes", &AdaptParams::smoothing_passes)
        .def_readwrite("equidist_iters", &AdaptParams::equidist_iters)
        .def_readwrite("beta", &AdaptParams::beta)
        .def_readwrite("max_weight", &AdaptParams::max_weight)
        .def("validate", &AdaptParams::validate);

    py::class_<Problem>(m, "Problem")
        .def_static("burgers", &Problem::burgers, py::arg("k") = 1.0)
        .def_static("advection", &Problem::advection, py::arg("speed"), py::arg("k") = 1.0)
        .def_static("custom", &Problem::custom, py::arg("name"), py::arg("f"), py::arg("df"), py::arg("k") = 1.0)
        .def_property_readonly("name", &Problem::name)
        .def_property_readonly("k", &Problem::k)
        .def("flux", &Problem::flux)
        .def("potential", &Problem::potential)
        .def("entropy_flux", &Problem::entropy_flux);

    py::class_<Scheme>(m, "Scheme")
        .def(py::init(&Scheme::parse), py::arg("name") = "rusanov", py::arg("fixed_d") = 0.0)
        .def_property_readonly("name", &Scheme::name)
        .def_readonly("fixed_d", &Scheme::fixed_d);

    py::class_<InterfaceCoeffs>(m, "InterfaceCoeffs")
        .def_readonly("dv", &InterfaceCoeffs::dv)
        .def_readonly("B", &InterfaceCoeffs::B)
        .def_readonly("Q", &InterfaceCoeffs::Q)
        .def_readonly("Qstar", &InterfaceCoeffs::Qstar)
        .def_readonly("D", &InterfaceCoeffs::D)
        .def_readonly("Fhat", &InterfaceCoeffs::Fhat)
        .def_readonly("G", &InterfaceCoeffs::G)
        .def_readonly("viscosity_clamped", &InterfaceCoeffs::viscosity_clamped);

    m.def("compute_monitor",
          [](std::vector<double> u, const Mesh1D& mesh, const AdaptParams& p) {
              return compute_monitor(physical(std::move(u)), mesh, p);
          },
          py::arg("u"), py::arg("mesh"), py::arg("params") = AdaptParams{});
    m.def("reconstruct_mesh",
          [](const Mesh1D& mesh, std::vector<double> u, const AdaptParams& p) {
              return reconstruct_mesh(mesh, physical(std::move(u)), p);
          },
          py::arg("mesh"), py::arg("u"), py::arg("params") = AdaptParams{});
    m.def("edge_displacements", &edge_displacements, py::arg("old_mesh"), py::arg("new_mesh"));
    m.def("remap_u",
          [](const Mesh1D& old_mesh, const Mesh1D& new_mesh, std::vector<double> u) {
              return to_list(remap_u(old_mesh, new_mesh, physical(std::move(u))).values());
          },
          py::arg("old_mesh"), py::arg("new_mesh"), py::arg("u"));
    m.def("h_terms",
          [](std::vector<double> v, const Mesh1D& old_mesh, std::vector<double> d) {
              return h_terms(reference(std::move(v)), old_mesh, d).values;
          },
          py::arg("v"), py::arg("old_mesh"), py::arg("displacements"));
    m.def("remap_v_via_h",
          [](std::vector<double> v, std::vector<double> h) {
              return to_list(remap_v_via_h(reference(std::move(v)), HTerms{std::move(h)}).values());
          },
          py::arg("v"), py::arg("h"));
    m.def("to_reference",
          [](const Mesh1D& mesh, std::vector<double> u) {
              return to_list(to_reference(mesh, physical(std::move(u))).v.values());
          },
          py::arg("mesh"), py::arg("u"));
    m.def("from_reference",
          [](const Mesh1D& mesh, std::vector<double> v) {
              return to_list(from_reference(mesh, {mesh.reference_width(), reference(std::move(v))}).values());
          },
          py::arg("mesh"), py::arg("v"));
    m.def("interface_coeffs", &interface_coeffs, py::arg("problem"), py::arg("vl"), py::arg("vr"),
          py::arg("scheme") = Scheme{});
    m.def("all_interface_coeffs",
          [](const Problem& p, std::vector<double> v, const Scheme& s) {
              return all_interface_coeffs(p, reference(std::move(v)), s);
          },
          py::arg("problem"), py::arg("v"), py::arg("scheme") = Scheme{});
    m.def("mesh_term",
          [](std::vector<double> v, std::vector<double> h) {
              return mesh_term(reference(std::move(v)), HTerms{std::move(h)});
          },
          py::arg("v"), py::arg("h"));
    m.def("maincond_rhs",
          [](const std::vector<InterfaceCoeffs>& c, double dt, double dx, double k) {
              return maincond_rhs(c, dt, dx, k);
          },
          py::arg("coeffs"), py::arg("dt"), py::arg("dx"), py::arg("k") = 1.0);

    py::enum_<DtPolicy>(m, "DtPolicy")
        .value("appendix", DtPolicy::appendix)
        .value("sufficient", DtPolicy::sufficient);

    py::class_<StepOptions>(m, "StepOptions")
        .def(py::init<>())
        .def_readwrite("scheme", &StepOptions::scheme)
        .def_readwrite("adapt", &StepOptions::adapt)
        .def_readwrite("adapt_params", &StepOptions::adapt_params)
        .def_readwrite("enforce", &StepOptions::enforce)
        .def_readwrite("max_bisect", &StepOptions::max_bisect)
        .def_readwrite("cfl_target", &StepOptions::cfl_target)
        .def_readwrite("dt_policy", &StepOptions::dt_policy)
        .def_readwrite("q_min", &StepOptions::q_min)
        .def_readwrite("dt_cap", &StepOptions::dt_cap);

    py::class_<StepReport>(m, "StepReport")
        .def_readonly("step", &StepReport::step)
        .def_readonly("t", &StepReport::t)
        .def_readonly("dt", &StepReport::dt)
        .def_readonly("theta", &StepReport::theta)
        .def_readonly("halvings", &StepReport::halvings)
        .def_readonly("mesh_term", &StepReport::mesh_term)
        .def_readonly("maincond_rhs", &StepReport::maincond_rhs)
        .def_readonly("margin", &StepReport::margin)
        .def_readonly("entropy_residual", &StepReport::entropy_residual)
        .def_readonly("violations", &StepReport::violations)
        .def_readonly("worst_margin", &StepReport::worst_margin)
        .def_readonly("total_mass", &StepReport::total_mass)
        .def_readonly("total_entropy", &StepReport::total_entropy)
        .def_readonly("max_gcl_residual", &StepReport::max_gcl_residual);

    py::class_<MasState>(m, "MasState")
        .def(py::init([](const Mesh1D& mesh, std::vector<double> u) {
                 return MasState::initial(mesh, physical(std::move(u)));
             }),
             py::arg("mesh"), py::arg("u"))
        .def_readonly("t", &MasState::t)
        .def_readonly("step", &MasState::step)
        .def_readonly("mesh", &MasState::mesh)
        .def_property_readonly("u", [](const MasState& s) { return to_list(s.u.values()); })
        .def_property_readonly("v", [](const MasState& s) { return to_list(s.ref.v.values()); });

    m.def("mas_step",
          [](const MasState& state, const Problem& problem, const StepOptions& options) {
              auto out = mas_step(state, problem, options);
              return py::make_tuple(std::move(out.state), std::move(out.report));
          },
          py::arg("state"), py::arg("problem"), py::arg("options") = StepOptions{},
          "Advance one adaptive step; returns (state, report).");

    m.def("check_config",
          [](const std::filesystem::path& path, const std::vector<std::string>& overrides) {
              return format_config(load_config(path, overrides));
          },
          py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
          "Validate a config file and return the resolved settings as text.");
    m.def("run_config",
          [](const std::filesystem::path& path, const std::vector<std::string>& overrides) {
              RunResult r;
              {
                  py::gil_scoped_release release;
                  r = run(load_config(path, overrides));
              }
              return py::dict(py::arg("steps") = r.steps, py::arg("t") = r.t, py::arg("output_dir") = r.output_dir);
          },
          py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
          "Run a config file to completion and write its output files.");
}
