#pragma once

// Reference elements on [-1,1]^n: DoF functionals, shape spaces and the
// element constructors for the tensor-product (Q-), serendipity (S),
// trimmed-serendipity (S-), Hermite (G-), Adini (A), trimmed-Adini (A-),
// reduced-Adini and scalar-component families.

#include "fet/poly.hpp"
#include "fet/refcell.hpp"
#include "fet/spaces.hpp"

#include <optional>
#include <string>

namespace fet {

enum class Family {
    Qminus,
    S,
    Sminus,
    Hermite,
    Adini,
    TrimmedAdini,
    ReducedAdini,
    ComponentPx,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct DofFunctional {
    enum class Kind {
        VertexEval,
        VertexDeriv,    // index = axis
        VertexVecEval,  // index = component
        EdgeMoment,
        FaceMoment,
        InteriorMoment,
    };
    enum class Trace {
        Scalar,          // k = 0 traces
        Tangential,      // edge: component along the edge axis
        Normal,          // edge (2D k=1) / face (3D k=2): component along the normal axis
        TangentialPair,  // face (3D k=1): the two in-plane components in the face frame
    };

    Kind kind = Kind::VertexEval;
    int entity_dim = 0;
    int entity_id = 0;
    int index = 0;                        // axis / component for vertex kinds
    Trace trace = Trace::Scalar;
    std::vector<Polynomial> weights;      // entity intrinsic coords; InteriorMoment:
                                          // one entry per proxy component (ambient)
    int legendre_degree = -1;             // edge moments only; drives dof_transfer

    bool operator==(const DofFunctional& o) const = default;
};

struct ElementDef {
    Family family = Family::Qminus;
    int dim = 2;
    int order = 0;  // form order k
    int degree = 1; // r
    std::vector<FormField> shape_basis;
    std::vector<DofFunctional> dofs;
};

// Exact application of a DoF functional to a polynomial form.
Rat apply_dof(const DofFunctional& d, const FormField& u);

bool element_defined(Family f, int n, int k, int r);
ElementDef build_element(Family f, int n, int k, int r);

// Shape-space span only (reduced, deterministic); also used by the transforms.
std::vector<FormField> shape_span(Family f, int n, int k, int r);

// M[i][j] = dofs[i] applied to shape_basis[j].
QMat vandermonde(const ElementDef& e);

struct NodalBasis {
    ElementDef element;
    std::vector<FormField> duals; // biorthogonal to element.dofs
};
NodalBasis nodal_basis(const ElementDef& e);

// Exact kernel of the boundary-entity DoFs on the shape space.
std::vector<FormField> bubble_space(const ElementDef& e);

// Per-entity-dimension DoF counts, indexed 0..n.
std::vector<int> dof_table(const ElementDef& e);

// `element-info` JSON document.
std::string element_info_json(const ElementDef& e);

} // namespace fet
