#include "fet/nonconform.hpp"

#include "fet/refcell.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <stdexcept>

namespace fet {

namespace {

std::vector<Polynomial> q_x_span()
{
    std::vector<Polynomial> out;
    for (int c = 0; c <= 1; ++c)
        for (int b = 0; b <= 1; ++b)
            for (int a = 0; a <= 2; ++a)
                out.push_back(Polynomial::monomial(3, {a, b, c}));
    return out;
}

std::vector<Polynomial> b_x_span()
{
    Polynomial x = Polynomial::variable(3, 0);
    Polynomial y = Polynomial::variable(3, 1);
    Polynomial z = Polynomial::variable(3, 2);
    Polynomial one = Polynomial::constant(3, 1);
    Polynomial bx = x * x - one;
    Polynomial by = y * y - one;
    Polynomial bz = z * z - one;
    // Note the z and y multipliers: the odd-in-x candidate x*bx*by has zero
    // mean on all four x-parallel faces and would make Pi_B singular.
    return {bx * by, z * bx * by, bx * bz, y * bx * bz};
}

// The DoF subsets defining the interpolations.
std::vector<DofFunctional> vertex_conditions()
{
    std::vector<DofFunctional> out;
    for (int v = 0; v < 8; ++v) {
        DofFunctional d;
        d.kind = DofFunctional::Kind::VertexEval;
        d.entity_id = v;
        out.push_back(d);
    }
    return out;
}

std::vector<DofFunctional> x_edge_conditions()
{
    std::vector<DofFunctional> out;
    for (int e = 0; e < 4; ++e) { // edges along the x axis
        DofFunctional d;
        d.kind = DofFunctional::Kind::EdgeMoment;
        d.entity_dim = 1;
        d.entity_id = e;
        d.trace = DofFunctional::Trace::Scalar;
        d.weights = {Polynomial::constant(1, 1)};
        d.legendre_degree = 0;
        out.push_back(d);
    }
    return out;
}

std::vector<DofFunctional> x_face_conditions()
{
    std::vector<DofFunctional> out;
    for (int f = 2; f < 6; ++f) { // faces parallel to the x axis
        DofFunctional d;
        d.kind = DofFunctional::Kind::FaceMoment;
        d.entity_dim = 2;
        d.entity_id = f;
        d.trace = DofFunctional::Trace::Scalar;
        d.weights = {Polynomial::constant(2, 1)};
        out.push_back(d);
    }
    return out;
}

Polynomial match_conditions(const std::vector<Polynomial>& basis,
                            const std::vector<DofFunctional>& conds,
                            const Polynomial& u)
{
    QMat m(conds.size(), basis.size());
    std::vector<Rat> rhs(conds.size());
    FormField uf = FormField::scalar(u, 0);
    for (std::size_t i = 0; i < conds.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            m(i, j) = apply_dof(conds[i], FormField::scalar(basis[j], 0));
        rhs[i] = apply_dof(conds[i], uf);
    }
    auto sol = m.solve(rhs);
    if (!sol)
        throw std::runtime_error("component_interpolate: singular system");
    Polynomial out(3);
    for (std::size_t j = 0; j < basis.size(); ++j)
        out = out + basis[j] * (*sol)[j];
    return out;
}

} // namespace

ComponentSpaces component_spaces()
{
    ComponentSpaces s;
    for (const auto& f : shape_span(Family::ComponentPx, 3, 0, 2))
        s.P.push_back(f.components[0]);
    s.Q = q_x_span();
    s.B = b_x_span();
    std::vector<FormField> joint;
    for (const auto& p : s.Q)
        joint.push_back(FormField::scalar(p, 0));
    for (const auto& p : s.B)
        joint.push_back(FormField::scalar(p, 0));
    for (const auto& f : reduce_span(joint).basis)
        s.A.push_back(f.components[0]);
    return s;
}

Polynomial component_interpolate(InterpOp op, const Polynomial& u)
{
    static const ComponentSpaces spaces = component_spaces();
    std::vector<DofFunctional> conds;
    const std::vector<Polynomial>* basis = nullptr;
    switch (op) {
    case InterpOp::Q:
        conds = vertex_conditions();
        for (auto& d : x_edge_conditions())
            conds.push_back(d);
        basis = &spaces.Q;
        break;
    case InterpOp::B:
        conds = x_face_conditions();
        basis = &spaces.B;
        break;
    case InterpOp::A:
        conds = vertex_conditions();
        for (auto& d : x_edge_conditions())
            conds.push_back(d);
        for (auto& d : x_face_conditions())
            conds.push_back(d);
        basis = &spaces.A;
        break;
    }
    return match_conditions(*basis, conds, u);
}

Rat face_defect_integral(const Polynomial& v, int face)
{
    Polynomial d = v - component_interpolate(InterpOp::A, v);
    return trace_on(ref_face(3, face), d).integrate_ref();
}

Rat boundary_defect_integral(const Polynomial& v)
{
    // Outward-normal-weighted defect, accumulated per axis: the quantity
    // that must vanish so piecewise-constant normal fluxes see no jump.
    Rat acc(0);
    for (int axis = 0; axis < 3; ++axis) {
        Rat signed_sum = face_defect_integral(v, 2 * axis + 1) -
                         face_defect_integral(v, 2 * axis);
        acc += abs(signed_sum);
    }
    return acc;
}

// ---- solver --------------------------------------------------------------

namespace {

using SpMat = Eigen::SparseMatrix<double>;

SpMat to_sparse(const std::vector<FTriplet>& trips, int n)
{
    std::vector<Eigen::Triplet<double>> et;
    et.reserve(trips.size());
    for (const auto& t : trips)
        et.emplace_back(t.row, t.col, t.value);
    SpMat m(n, n);
    m.setFromTriplets(et.begin(), et.end());
    return m;
}

struct Tabulated {
    std::vector<std::vector<double>> points; // reference
    std::vector<double> weights;
    // [basis][component][point], and derivative [basis][component*n+axis][point]
    std::vector<std::vector<std::vector<double>>> val, der;
};

Tabulated tabulate(const GlobalSpace& space, int q)
{
    const int n = space.mesh.dim;
    Quad1D g = gauss_legendre(q);
    Tabulated t;
    int total = 1;
    for (int i = 0; i < n; ++i)
        total *= q;
    for (int r = 0; r < total; ++r) {
        int rr = r;
        std::vector<double> x(n);
        double w = 1;
        for (int i = 0; i < n; ++i) {
            x[i] = g.points[rr % q];
            w *= g.weights[rr % q];
            rr /= q;
        }
        t.points.push_back(x);
        t.weights.push_back(w);
    }
    const auto& duals = space.ref_duals;
    const int nb = (int)duals.size();
    const int nc = (int)duals[0].components.size();
    t.val.resize(nb);
    t.der.resize(nb);
    for (int j = 0; j < nb; ++j) {
        t.val[j].assign(nc, std::vector<double>(t.points.size()));
        t.der[j].assign(nc * n, std::vector<double>(t.points.size()));
        for (int c = 0; c < nc; ++c) {
            std::vector<Polynomial> dp;
            for (int a = 0; a < n; ++a)
                dp.push_back(duals[j].components[c].derivative(a));
            for (std::size_t p = 0; p < t.points.size(); ++p) {
                t.val[j][c][p] = eval_double(duals[j].components[c], t.points[p]);
                for (int a = 0; a < n; ++a)
                    t.der[j][c * n + a][p] = eval_double(dp[a], t.points[p]);
            }
        }
    }
    return t;
}

} // namespace

PoissonResult solve_poisson(const GlobalSpace& space, const FieldFn& u_exact,
                            const FieldFn& grad_u_exact, const FieldFn& f,
                            int quad_pts, bool with_consistency)
{
    const int n = space.mesh.dim;
    const int N = space.n_dofs;
    auto ktrips = assemble_bilinear(space, BilinearForm::BrokenGrad, quad_pts);
    auto b = assemble_load(space, f, quad_pts);

    std::vector<int> free_idx(N, -1);
    int nfree = 0;
    for (int g = 0; g < N; ++g)
        if (!space.boundary_mask[g])
            free_idx[g] = nfree++;
    if (nfree == 0)
        throw std::runtime_error("solve_poisson: empty masked space");

    std::vector<Eigen::Triplet<double>> et;
    for (const auto& t : ktrips)
        if (free_idx[t.row] >= 0 && free_idx[t.col] >= 0)
            et.emplace_back(free_idx[t.row], free_idx[t.col], t.value);
    SpMat K(nfree, nfree);
    K.setFromTriplets(et.begin(), et.end());
    Eigen::VectorXd rhs(nfree);
    for (int g = 0; g < N; ++g)
        if (free_idx[g] >= 0)
            rhs[free_idx[g]] = b[g];

    Eigen::SimplicialLDLT<SpMat> solver(K);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("solve_poisson: factorization failed");
    Eigen::VectorXd x = solver.solve(rhs);

    std::vector<double> coeff(N, 0.0);
    for (int g = 0; g < N; ++g)
        if (free_idx[g] >= 0)
            coeff[g] = x[free_idx[g]];

    // Errors by quadrature.
    Tabulated tab = tabulate(space, quad_pts);
    auto h = space.mesh.cell_halfwidth();
    std::vector<double> hd(n), inv_hd(n);
    double jac = 1;
    for (int i = 0; i < n; ++i) {
        hd[i] = h[i].get_d();
        inv_hd[i] = 1.0 / hd[i];
        jac *= hd[i];
    }
    const int nb = (int)space.ref_duals.size();
    const int nc = (int)space.ref_duals[0].components.size();

    double e_l2 = 0, e_h1 = 0;
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        auto center = space.mesh.cell_center(cell);
        std::vector<double> cd(n);
        for (int i = 0; i < n; ++i)
            cd[i] = center[i].get_d();
        for (std::size_t p = 0; p < tab.points.size(); ++p) {
            std::vector<double> xph(n);
            for (int i = 0; i < n; ++i)
                xph[i] = cd[i] + hd[i] * tab.points[p][i];
            std::vector<double> ue = u_exact(xph);
            std::vector<double> ge = grad_u_exact(xph);
            for (int c = 0; c < nc; ++c) {
                double uh = 0;
                std::vector<double> gh(n, 0.0);
                for (int j = 0; j < nb; ++j) {
                    double cj = coeff[space.cell_to_global[cell][j]];
                    if (cj == 0)
                        continue;
                    uh += cj * tab.val[j][c][p];
                    for (int a = 0; a < n; ++a)
                        gh[a] += cj * tab.der[j][c * n + a][p] * inv_hd[a];
                }
                double du = uh - ue[c];
                e_l2 += tab.weights[p] * jac * du * du;
                for (int a = 0; a < n; ++a) {
                    double dg = gh[a] - ge[c * n + a];
                    e_h1 += tab.weights[p] * jac * dg * dg;
                }
            }
        }
    }

    PoissonResult res;
    res.h = 2.0 * hd[0];
    res.err_l2 = std::sqrt(e_l2);
    res.err_h1 = std::sqrt(e_h1);
    res.n_dofs = nfree;

    if (with_consistency) {
        // r_j = (grad u, grad_h phi_j) - (f, phi_j) over the masked basis;
        // quotient against the broken H1 norm of phi_j.
        std::vector<double> r(N, 0.0);
        for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
            auto center = space.mesh.cell_center(cell);
            std::vector<double> cd(n);
            for (int i = 0; i < n; ++i)
                cd[i] = center[i].get_d();
            for (std::size_t p = 0; p < tab.points.size(); ++p) {
                std::vector<double> xph(n);
                for (int i = 0; i < n; ++i)
                    xph[i] = cd[i] + hd[i] * tab.points[p][i];
                std::vector<double> ge = grad_u_exact(xph);
                for (int j = 0; j < nb; ++j) {
                    double s = 0;
                    for (int c = 0; c < nc; ++c)
                        for (int a = 0; a < n; ++a)
                            s += ge[c * n + a] * tab.der[j][c * n + a][p] * inv_hd[a];
                    r[space.cell_to_global[cell][j]] += tab.weights[p] * jac * s;
                }
            }
        }
        auto mtrips = assemble_bilinear(space, BilinearForm::Mass, quad_pts);
        std::vector<double> kdiag(N, 0.0), mdiag(N, 0.0);
        for (const auto& t : ktrips)
            if (t.row == t.col)
                kdiag[t.row] += t.value;
        for (const auto& t : mtrips)
            if (t.row == t.col)
                mdiag[t.row] += t.value;
        double worst = 0;
        for (int g = 0; g < N; ++g) {
            if (space.boundary_mask[g])
                continue;
            double norm = std::sqrt(kdiag[g] + mdiag[g]);
            if (norm <= 0)
                continue;
            worst = std::max(worst, std::abs(r[g] - b[g]) / norm);
        }
        res.consistency = worst;
    }
    return res;
}

double korn_lambda_min(const GlobalSpace& space, int quad_pts)
{
    const int N = space.n_dofs;
    std::vector<int> free_idx(N, -1);
    int nfree = 0;
    for (int g = 0; g < N; ++g)
        if (!space.boundary_mask[g])
            free_idx[g] = nfree++;
    if (nfree == 0)
        throw std::runtime_error("korn_lambda_min: empty masked space");

    auto etrips = assemble_bilinear(space, BilinearForm::BrokenSymGrad, quad_pts);
    auto gtrips = assemble_bilinear(space, BilinearForm::BrokenGrad, quad_pts);
    auto mtrips = assemble_bilinear(space, BilinearForm::Mass, quad_pts);

    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(nfree, nfree);
    Eigen::MatrixXd Nrm = Eigen::MatrixXd::Zero(nfree, nfree);
    auto add = [&](Eigen::MatrixXd& m, const std::vector<FTriplet>& ts) {
        for (const auto& t : ts)
            if (free_idx[t.row] >= 0 && free_idx[t.col] >= 0)
                m(free_idx[t.row], free_idx[t.col]) += t.value;
    };
    add(E, etrips);
    add(Nrm, gtrips);
    add(Nrm, mtrips);

    // Symmetrize against roundoff.
    E = 0.5 * (E + E.transpose()).eval();
    Nrm = 0.5 * (Nrm + Nrm.transpose()).eval();

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(E, Nrm);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("korn_lambda_min: eigensolver failed");
    return es.eigenvalues()(0);
}

} // namespace fet
