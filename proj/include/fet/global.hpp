#pragma once

// Global finite element spaces on cubical meshes: shared-entity DoF
// numbering, exact rational differential matrices, cohomology ranks, and
// Gauss-Legendre float assembly of mass / broken-gradient bilinear forms.

#include "fet/element.hpp"
#include "fet/mesh.hpp"

#include <functional>
#include <map>

namespace fet {

struct GlobalSpace {
    CubicalMesh mesh;
    ElementDef element;
    std::vector<FormField> ref_duals;           // reference nodal basis
    std::vector<std::vector<int>> cell_to_global;
    std::vector<bool> boundary_mask;            // DoFs on boundary entities
    int n_dofs = 0;
};

GlobalSpace build_global(const CubicalMesh& mesh, const ElementDef& element);

// Physical restriction of the cell's nodal basis (components composed with
// the inverse affine map; no Piola scaling -- orientation is by global axes
// and cells are congruent, which keeps shared DoFs single-valued).
std::vector<FormField> physical_duals(const GlobalSpace& space, int cell);

// Exterior derivative of a reference-coordinates field of a cell with
// per-axis scalings 1/h_i (chain rule through the affine map).
FormField scaled_differential(const FormField& u, const std::vector<Rat>& inv_h);

// Exact global interpolant coefficients of a physical polynomial field;
// throws if shared DoFs disagree (field not admissible).
std::vector<Rat> interpolate_global(const GlobalSpace& space, const FormField& u);

struct DiffMatrix {
    int rows = 0, cols = 0;
    std::vector<std::map<int, Rat>> row_data; // sparse rows
};

// Exact matrix of d from `src` to `dst`; verifies that d of every shape
// function lies in the target shape space.
DiffMatrix diff_matrix(const GlobalSpace& src, const GlobalSpace& dst);

std::size_t sparse_rank(DiffMatrix m); // destructive Gaussian elimination

// d(dst) * d(src) == 0, exactly.
bool composes_to_zero(const DiffMatrix& second, const DiffMatrix& first);

struct CohomologyReport {
    std::vector<int> dims;
    std::vector<std::size_t> ranks; // rank of d_k, k = 0..n-1
    std::vector<int> betti;
    bool dd_zero = true;
};

CohomologyReport cohomology(const std::vector<const GlobalSpace*>& complex);

// ---- float assembly ------------------------------------------------------

struct Quad1D {
    std::vector<double> points, weights;
};
Quad1D gauss_legendre(int n_points);

double eval_double(const Polynomial& p, const std::vector<double>& x);

enum class BilinearForm { Mass, BrokenGrad, BrokenSymGrad };

struct FTriplet {
    int row = 0, col = 0;
    double value = 0;
};

// Cell-wise Gauss-Legendre assembly; quadrature with `quad_pts` points per
// axis (exact for polynomial integrands of degree <= 2*quad_pts - 1, checked
// against the element degree).
std::vector<FTriplet> assemble_bilinear(const GlobalSpace& space, BilinearForm form,
                                        int quad_pts);

// Load vector (f, v) with f given in physical coordinates (one value per
// proxy component).
using FieldFn = std::function<std::vector<double>(const std::vector<double>&)>;
std::vector<double> assemble_load(const GlobalSpace& space, const FieldFn& f,
                                  int quad_pts);

} // namespace fet
