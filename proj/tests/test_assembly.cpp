#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fet/global.hpp"

#include <cmath>

using namespace fet;

namespace {

CubicalMesh unit_mesh(int dim, const std::vector<int>& n)
{
    std::vector<Rat> lo(dim, Rat(0)), hi(dim, Rat(1));
    return build_mesh(dim, n, lo, hi);
}

GlobalSpace make_space(Family f, int n, int k, int r, const std::vector<int>& cells)
{
    return build_global(unit_mesh(n, cells), build_element(f, n, k, r));
}

// Dense accumulation of assembled triplets.
std::vector<std::vector<double>> densify(const GlobalSpace& s,
                                         const std::vector<FTriplet>& ts)
{
    std::vector<std::vector<double>> m(s.n_dofs, std::vector<double>(s.n_dofs, 0.0));
    for (const auto& t : ts)
        m[t.row][t.col] += t.value;
    return m;
}

} // namespace

TEST_CASE("global dof counts")
{
    CHECK(make_space(Family::Hermite, 2, 0, 3, {2, 2}).n_dofs == 43);
    CHECK(make_space(Family::Adini, 2, 0, 3, {2, 2}).n_dofs == 27);
    CHECK(make_space(Family::ReducedAdini, 2, 1, 2, {1, 1}).n_dofs == 12);
    // Biquadratic scalars on 2x2: full 5x5 grid of nodes.
    CHECK(make_space(Family::Qminus, 2, 0, 2, {2, 2}).n_dofs == 25);
    // Lowest-order 3D tensor complex on 2x2x2: entity counts.
    CHECK(make_space(Family::Qminus, 3, 0, 1, {2, 2, 2}).n_dofs == 27);
    CHECK(make_space(Family::Qminus, 3, 1, 1, {2, 2, 2}).n_dofs == 54);
    CHECK(make_space(Family::Qminus, 3, 2, 1, {2, 2, 2}).n_dofs == 36);
    CHECK(make_space(Family::Qminus, 3, 3, 1, {2, 2, 2}).n_dofs == 8);
}

TEST_CASE("boundary mask counts")
{
    GlobalSpace s = make_space(Family::Qminus, 2, 0, 1, {2, 2});
    int nb = 0;
    for (bool b : s.boundary_mask)
        if (b)
            ++nb;
    CHECK(nb == 8); // all grid nodes except the center
}

TEST_CASE("differential matrix commutes with interpolation")
{
    GlobalSpace v0 = make_space(Family::Qminus, 2, 0, 2, {2, 2});
    GlobalSpace v1 = make_space(Family::Qminus, 2, 1, 2, {2, 2});
    DiffMatrix d0 = diff_matrix(v0, v1);

    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    FormField u = FormField::scalar(x * x * y + x - y * y, 0);
    auto cu = interpolate_global(v0, u);
    auto cdu = interpolate_global(v1, differential(u));
    REQUIRE((int)cu.size() == d0.cols);
    REQUIRE((int)cdu.size() == d0.rows);
    for (int i = 0; i < d0.rows; ++i) {
        Rat acc(0);
        for (const auto& [j, v] : d0.row_data[i])
            acc += v * cu[j];
        CHECK(acc == cdu[i]);
    }
}

TEST_CASE("d of a constant vanishes and d o d = 0")
{
    GlobalSpace v0 = make_space(Family::Qminus, 2, 0, 2, {2, 2});
    GlobalSpace v1 = make_space(Family::Qminus, 2, 1, 2, {2, 2});
    GlobalSpace v2 = make_space(Family::Qminus, 2, 2, 2, {2, 2});
    DiffMatrix d0 = diff_matrix(v0, v1);
    DiffMatrix d1 = diff_matrix(v1, v2);
    CHECK(composes_to_zero(d1, d0));

    auto ones = interpolate_global(v0, FormField::scalar(Polynomial::constant(2, 1), 0));
    for (int i = 0; i < d0.rows; ++i) {
        Rat acc(0);
        for (const auto& [j, v] : d0.row_data[i])
            acc += v * ones[j];
        CHECK(acc == 0);
    }
    // rank of d0 on a connected mesh: dim V0 - 1.
    CHECK(sparse_rank(d0) == (std::size_t)(v0.n_dofs - 1));
}

TEST_CASE("cohomology of 2D complexes on boxes is trivial")
{
    struct Spec { Family f; int k, r; };
    auto run = [&](const std::vector<Spec>& specs, const std::vector<int>& cells) {
        std::vector<GlobalSpace> spaces;
        for (const auto& s : specs)
            spaces.push_back(make_space(s.f, 2, s.k, s.r, cells));
        std::vector<const GlobalSpace*> ptrs;
        for (const auto& s : spaces)
            ptrs.push_back(&s);
        CohomologyReport rep = cohomology(ptrs);
        CHECK(rep.dd_zero);
        CHECK(rep.betti == std::vector<int>{1, 0, 0});
    };
    for (auto cells : {std::vector<int>{2, 2}, {3, 3}}) {
        run({{Family::Qminus, 0, 2}, {Family::Qminus, 1, 2}, {Family::Qminus, 2, 2}},
            cells);
        run({{Family::Hermite, 0, 3}, {Family::Hermite, 1, 3}, {Family::Hermite, 2, 3}},
            cells);
        run({{Family::Adini, 0, 3}, {Family::Adini, 1, 2}, {Family::Adini, 2, 1}},
            cells);
        run({{Family::TrimmedAdini, 0, 3}, {Family::TrimmedAdini, 1, 3},
             {Family::TrimmedAdini, 2, 3}},
            cells);
        run({{Family::Adini, 0, 3}, {Family::ReducedAdini, 1, 2},
             {Family::ReducedAdini, 2, 1}},
            cells);
    }
}

TEST_CASE("cohomology of the lowest-order 3D tensor complex")
{
    std::vector<GlobalSpace> spaces;
    for (int k = 0; k <= 3; ++k)
        spaces.push_back(make_space(Family::Qminus, 3, k, 1, {2, 2, 2}));
    std::vector<const GlobalSpace*> ptrs;
    for (const auto& s : spaces)
        ptrs.push_back(&s);
    CohomologyReport rep = cohomology(ptrs);
    CHECK(rep.dd_zero);
    CHECK(rep.betti == std::vector<int>{1, 0, 0, 0});
    // rank d0 = #vertices - 1; exactness then forces rank d1 = 54 - 26 and
    // rank d2 = 8 - 1 + 1.
    CHECK(rep.ranks == std::vector<std::size_t>{26, 28, 8});
}

TEST_CASE("gauss-legendre quadrature integrates polynomials exactly")
{
    Quad1D q = gauss_legendre(3);
    double acc = 0;
    for (std::size_t i = 0; i < q.points.size(); ++i)
        acc += q.weights[i] * std::pow(q.points[i], 4);
    CHECK(std::abs(acc - 2.0 / 5.0) < 1e-14);
    double total = 0;
    for (double w : q.weights)
        total += w;
    CHECK(std::abs(total - 2.0) < 1e-14);
}

TEST_CASE("mass matrix of piecewise constants is the cell volume")
{
    GlobalSpace s = make_space(Family::Qminus, 2, 2, 1, {2, 2});
    REQUIRE(s.n_dofs == 4);
    auto m = densify(s, assemble_bilinear(s, BilinearForm::Mass, 2));
    // The 2-form dual has reference value 1/4 (unit mean over [-1,1]^2) and
    // carries no Piola scaling, so (phi_i, phi_i) = (1/16) * |cell| = 1/64.
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(m[i][j] - (i == j ? 1.0 / 64 : 0.0)) < 1e-15);
    // The interpolant of the constant 1 still has unit mass.
    auto c = interpolate_global(
        s, FormField::scalar(Polynomial::constant(2, 1), 2));
    double energy = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            energy += c[i].get_d() * m[i][j] * c[j].get_d();
    CHECK(std::abs(energy - 1.0) < 1e-14);
}

TEST_CASE("mass matrix rows sum to the domain measure for scalars")
{
    GlobalSpace s = make_space(Family::Qminus, 2, 0, 1, {2, 2});
    auto ts = assemble_bilinear(s, BilinearForm::Mass, 3);
    double total = 0;
    for (const auto& t : ts)
        total += t.value;
    // (sum_i phi_i, sum_j phi_j) = (1, 1) = |domain| by partition of unity.
    CHECK(std::abs(total - 1.0) < 1e-13);
}

TEST_CASE("broken gradient annihilates globally constant scalars")
{
    GlobalSpace s = make_space(Family::Hermite, 2, 0, 3, {2, 2});
    auto k = densify(s, assemble_bilinear(s, BilinearForm::BrokenGrad, 5));
    auto ones = interpolate_global(
        s, FormField::scalar(Polynomial::constant(2, 1), 0));
    for (int i = 0; i < s.n_dofs; ++i) {
        double acc = 0;
        for (int j = 0; j < s.n_dofs; ++j)
            acc += k[i][j] * ones[j].get_d();
        CHECK(std::abs(acc) < 1e-12);
    }
}

TEST_CASE("symmetric gradient annihilates rigid motions")
{
    GlobalSpace s = make_space(Family::Adini, 2, 1, 2, {2, 2});
    auto e = densify(s, assemble_bilinear(s, BilinearForm::BrokenSymGrad, 5));
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    FormField rot(2, 1);
    rot.components[0] = y * Rat(-1) + Polynomial::constant(2, Rat(1, 3));
    rot.components[1] = x + Polynomial::constant(2, Rat(-2));
    auto c = interpolate_global(s, rot);
    double energy = 0;
    for (int i = 0; i < s.n_dofs; ++i)
        for (int j = 0; j < s.n_dofs; ++j)
            energy += c[i].get_d() * e[i][j] * c[j].get_d();
    CHECK(std::abs(energy) < 1e-12);
    // Non-rigid fields have positive energy.
    FormField stretch(2, 1);
    stretch.components[0] = x;
    stretch.components[1] = Polynomial(2);
    auto cs = interpolate_global(s, stretch);
    double es = 0;
    for (int i = 0; i < s.n_dofs; ++i)
        for (int j = 0; j < s.n_dofs; ++j)
            es += cs[i].get_d() * e[i][j] * cs[j].get_d();
    CHECK(es > 0.5); // integral of |sym grad|^2 = 1 over the unit square
    CHECK(std::abs(es - 1.0) < 1e-12);
}

TEST_CASE("scaled differential matches the chain rule")
{
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    FormField u = FormField::scalar(x * y, 0);
    FormField d = scaled_differential(u, {Rat(2), Rat(3)});
    CHECK(d.components[0] == x * Rat(-3));
    CHECK(d.components[1] == y * Rat(2));
}
