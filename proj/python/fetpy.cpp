// Python bindings for the main element/mesh/assembly operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fet/element.hpp"
#include "fet/global.hpp"
#include "fet/nonconform.hpp"
#include "fet/xform.hpp"

namespace py = pybind11;
using namespace fet;

namespace {

Family family_arg(const std::string& name)
{
    auto f = family_from_name(name);
    if (!f)
        throw py::value_error("unknown family: " + name);
    return *f;
}

GlobalSpace make_space(const std::string& family, int n, int k, int r, int cells)
{
    std::vector<Rat> lo(n, Rat(0)), hi(n, Rat(1));
    CubicalMesh mesh = build_mesh(n, std::vector<int>(n, cells), lo, hi);
    return build_global(mesh, build_element(family_arg(family), n, k, r));
}

} // namespace

PYBIND11_MODULE(fetpy, m)
{
    m.doc() = "Finite element toolkit for cubical de Rham complexes";

    m.def("families", [] {
        std::vector<std::string> out;
        for (Family f : {Family::Qminus, Family::S, Family::Sminus,
                         Family::Hermite, Family::Adini, Family::TrimmedAdini,
                         Family::ReducedAdini, Family::ComponentPx})
            out.push_back(family_name(f));
        return out;
    });

    m.def("element_defined",
          [](const std::string& family, int n, int k, int r) {
              return element_defined(family_arg(family), n, k, r);
          },
          py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r"));

    m.def("space_dimension",
          [](const std::string& family, int n, int k, int r) {
              return build_element(family_arg(family), n, k, r).shape_basis.size();
          },
          py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r"));

    m.def("dof_counts",
          [](const std::string& family, int n, int k, int r) {
              return dof_table(build_element(family_arg(family), n, k, r));
          },
          py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r"),
          "Per-entity-dimension DoF counts.");

    m.def("is_unisolvent",
          [](const std::string& family, int n, int k, int r) {
              ElementDef e = build_element(family_arg(family), n, k, r);
              return e.dofs.size() == e.shape_basis.size() &&
                     vandermonde(e).det() != 0;
          },
          py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r"),
          "Exact nonsingularity of the generalized Vandermonde matrix.");

    m.def("element_info",
          [](const std::string& family, int n, int k, int r) {
              return element_info_json(build_element(family_arg(family), n, k, r));
          },
          py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r"),
          "JSON description of the element.");

    m.def("transfer_then_equals_direct",
          [](const std::string& family, int n, int k, int r) {
              ElementDef t = dof_transfer(build_element(family_arg(family), n, k, r));
              return elements_equivalent(t, build_element(t.family, n, k, r));
          },
          py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r"));

    m.def("betti_numbers",
          [](const std::string& family, int n,
             const std::vector<int>& degrees, int cells) {
              if ((int)degrees.size() != n + 1)
                  throw py::value_error("need one degree per form order");
              std::vector<GlobalSpace> spaces;
              for (int k = 0; k <= n; ++k)
                  spaces.push_back(make_space(family, n, k, degrees[k], cells));
              std::vector<const GlobalSpace*> ptrs;
              for (const auto& s : spaces)
                  ptrs.push_back(&s);
              CohomologyReport rep = cohomology(ptrs);
              if (!rep.dd_zero)
                  throw std::runtime_error("d o d != 0");
              return rep.betti;
          },
          py::arg("family"), py::arg("n"), py::arg("degrees"), py::arg("cells"),
          "Exact Betti numbers of the assembled complex on a unit-box mesh.");

    m.def("global_dofs",
          [](const std::string& family, int n, int k, int r, int cells) {
              return make_space(family, n, k, r, cells).n_dofs;
          },
          py::arg("family"), py::arg("n"), py::arg("k"), py::arg("r"),
          py::arg("cells"));

    m.def("korn_lambda_min",
          [](int cells, int quad_pts) {
              return korn_lambda_min(make_space("adini", 2, 1, 2, cells), quad_pts);
          },
          py::arg("cells"), py::arg("quad_pts") = 4,
          "Smallest broken-Korn eigenvalue of the 2D degree-2 vector element.");
}
