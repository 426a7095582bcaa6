#pragma once

// Nonconforming verification tools: the scalar x-component element's
// companion spaces and interpolation operators, the nonconforming Poisson
// solver with error/consistency reporting, and the discrete Korn quotient.

#include "fet/global.hpp"

namespace fet {

// Companion scalar spaces on the reference cell (3D):
//   P: the component element's shape space (dim 20);
//   Q: {1,x,x^2} x {1,y} x {1,z} (dim 12);
//   B: the four boundary-mean bubbles (dim 4);
//   A: Q + B (dim 16).
struct ComponentSpaces {
    std::vector<Polynomial> P, Q, B, A;
};
ComponentSpaces component_spaces();

enum class InterpOp { Q, B, A };

// Exact interpolation onto Q/B/A by matching the operator's DoF subset
// (vertex values, x-edge means, x-face means).
Polynomial component_interpolate(InterpOp op, const Polynomial& u);

// Outward-normal-weighted boundary integral of v - Pi_A v: the sum over
// axes of |int_{F_+} - int_{F_-}|, zero iff every opposite-face pair has
// matching defect integrals.
Rat boundary_defect_integral(const Polynomial& v);
// Same, for a single face id (0..5).
Rat face_defect_integral(const Polynomial& v, int face);

// ---- solver-side studies -------------------------------------------------

struct PoissonResult {
    double h = 0;
    double err_h1 = 0;        // broken H1 seminorm error
    double err_l2 = 0;
    double consistency = 0;   // basis-max consistency quotient (if requested)
    int n_dofs = 0;
};

// Homogeneous-Dirichlet Poisson via the broken-gradient form on the masked
// space: f componentwise -Laplace of the exact solution; errors by
// Gauss-Legendre quadrature against the supplied exact solution and gradient
// (gradient flattened component-major: index c*dim + axis).
PoissonResult solve_poisson(const GlobalSpace& space, const FieldFn& u_exact,
                            const FieldFn& grad_u_exact, const FieldFn& f,
                            int quad_pts, bool with_consistency);

// Smallest generalized eigenvalue of the broken sym-grad energy against the
// broken H1 norm on the masked space.
double korn_lambda_min(const GlobalSpace& space, int quad_pts);

} // namespace fet
