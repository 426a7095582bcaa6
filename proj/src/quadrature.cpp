#include "fet/global.hpp"

#include <cmath>
#include <stdexcept>

namespace fet {

Quad1D gauss_legendre(int n_points)
{
    if (n_points < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    Quad1D q;
    q.points.resize(n_points);
    q.weights.resize(n_points);
    const int n = n_points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev initial guess + Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1)
                p1 = x;
            for (int k = 1; k < n; ++k) {
                double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.points[i] = -x;
        q.points[n - 1 - i] = x;
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        q.points[n / 2] = 0.0;
    }
    return q;
}

double eval_double(const Polynomial& p, const std::vector<double>& x)
{
    double acc = 0;
    for (const auto& [e, c] : p.terms()) {
        double t = c.get_d();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= x[i];
        acc += t;
    }
    return acc;
}

namespace {

// Tensor quadrature on the reference cell.
struct TensorQuad {
    std::vector<std::vector<double>> points; // reference coordinates
    std::vector<double> weights;
};

TensorQuad tensor_quad(int dim, int q)
{
    Quad1D g = gauss_legendre(q);
    TensorQuad tq;
    int total = 1;
    for (int i = 0; i < dim; ++i)
        total *= q;
    for (int r = 0; r < total; ++r) {
        int t = r;
        std::vector<double> x(dim);
        double w = 1.0;
        for (int i = 0; i < dim; ++i) {
            x[i] = g.points[t % q];
            w *= g.weights[t % q];
            t /= q;
        }
        tq.points.push_back(x);
        tq.weights.push_back(w);
    }
    return tq;
}

int max_axis_degree(const ElementDef& e)
{
    int deg = 0;
    for (const auto& f : e.shape_basis)
        for (const auto& c : f.components)
            for (int a = 0; a < e.dim; ++a)
                deg = std::max(deg, c.degree(a));
    return deg;
}

} // namespace

std::vector<FTriplet> assemble_bilinear(const GlobalSpace& space, BilinearForm form,
                                        int quad_pts)
{
    const int n = space.mesh.dim;
    const ElementDef& el = space.element;
    int need = max_axis_degree(el);
    if (form != BilinearForm::Mass)
        need = std::max(0, need); // derivatives do not raise per-axis degree
    if (2 * quad_pts - 1 < 2 * need)
        throw std::invalid_argument("assemble_bilinear: quadrature order too low");
    if (form == BilinearForm::BrokenSymGrad && (int)el.shape_basis[0].components.size() != n)
        throw std::invalid_argument("assemble_bilinear: sym-grad needs a vector space");

    auto h = space.mesh.cell_halfwidth();
    std::vector<double> hd(n), inv_hd(n);
    double jac = 1.0;
    for (int i = 0; i < n; ++i) {
        hd[i] = h[i].get_d();
        inv_hd[i] = 1.0 / hd[i];
        jac *= hd[i];
    }

    const auto& duals = space.ref_duals;
    const int nb = (int)duals.size();
    const int nc = (int)duals[0].components.size();
    TensorQuad tq = tensor_quad(n, quad_pts);
    const int nq = (int)tq.points.size();

    // Tabulate values and reference derivatives once (cells are congruent).
    std::vector<std::vector<std::vector<double>>> val(nb), der(nb);
    for (int j = 0; j < nb; ++j) {
        val[j].assign(nc, std::vector<double>(nq));
        der[j].assign(nc * n, std::vector<double>(nq));
        for (int c = 0; c < nc; ++c) {
            std::vector<Polynomial> dp;
            for (int a = 0; a < n; ++a)
                dp.push_back(duals[j].components[c].derivative(a));
            for (int qp = 0; qp < nq; ++qp) {
                val[j][c][qp] = eval_double(duals[j].components[c], tq.points[qp]);
                for (int a = 0; a < n; ++a)
                    der[j][c * n + a][qp] = eval_double(dp[a], tq.points[qp]);
            }
        }
    }

    std::vector<double> local(nb * nb, 0.0);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
            double acc = 0;
            for (int qp = 0; qp < nq; ++qp) {
                double s = 0;
                if (form == BilinearForm::Mass) {
                    for (int c = 0; c < nc; ++c)
                        s += val[i][c][qp] * val[j][c][qp];
                } else if (form == BilinearForm::BrokenGrad) {
                    for (int c = 0; c < nc; ++c)
                        for (int a = 0; a < n; ++a)
                            s += der[i][c * n + a][qp] * inv_hd[a] *
                                 der[j][c * n + a][qp] * inv_hd[a];
                } else {
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b) {
                            double ei = 0.5 * (der[i][b * n + a][qp] * inv_hd[a] +
                                               der[i][a * n + b][qp] * inv_hd[b]);
                            double ej = 0.5 * (der[j][b * n + a][qp] * inv_hd[a] +
                                               der[j][a * n + b][qp] * inv_hd[b]);
                            s += ei * ej;
                        }
                }
                acc += tq.weights[qp] * s;
            }
            local[i * nb + j] = acc * jac;
        }

    std::vector<FTriplet> out;
    out.reserve((std::size_t)space.mesh.num_cells() * nb * nb);
    for (int c = 0; c < space.mesh.num_cells(); ++c)
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j)
                out.push_back({space.cell_to_global[c][i],
                               space.cell_to_global[c][j], local[i * nb + j]});
    return out;
}

std::vector<double> assemble_load(const GlobalSpace& space, const FieldFn& f,
                                  int quad_pts)
{
    const int n = space.mesh.dim;
    const auto& duals = space.ref_duals;
    const int nb = (int)duals.size();
    const int nc = (int)duals[0].components.size();
    TensorQuad tq = tensor_quad(n, quad_pts);
    const int nq = (int)tq.points.size();

    auto h = space.mesh.cell_halfwidth();
    std::vector<double> hd(n);
    double jac = 1.0;
    for (int i = 0; i < n; ++i) {
        hd[i] = h[i].get_d();
        jac *= hd[i];
    }

    std::vector<std::vector<std::vector<double>>> val(nb);
    for (int j = 0; j < nb; ++j) {
        val[j].assign(nc, std::vector<double>(nq));
        for (int c = 0; c < nc; ++c)
            for (int qp = 0; qp < nq; ++qp)
                val[j][c][qp] = eval_double(duals[j].components[c], tq.points[qp]);
    }

    std::vector<double> out(space.n_dofs, 0.0);
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        auto center = space.mesh.cell_center(cell);
        std::vector<double> cd(n);
        for (int i = 0; i < n; ++i)
            cd[i] = center[i].get_d();
        for (int qp = 0; qp < nq; ++qp) {
            std::vector<double> x(n);
            for (int i = 0; i < n; ++i)
                x[i] = cd[i] + hd[i] * tq.points[qp][i];
            std::vector<double> fv = f(x);
            for (int j = 0; j < nb; ++j) {
                double s = 0;
                for (int c = 0; c < nc; ++c)
                    s += fv[c] * val[j][c][qp];
                out[space.cell_to_global[cell][j]] += tq.weights[qp] * s * jac;
            }
        }
    }
    return out;
}

} // namespace fet
