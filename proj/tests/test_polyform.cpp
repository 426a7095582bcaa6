#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fet/element.hpp"
#include "fet/poly.hpp"
#include "fet/spaces.hpp"

#include <random>

using namespace fet;

namespace {

Polynomial random_poly(int dim, int maxdeg, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coef(-9, 9);
    Polynomial p(dim);
    for (const auto& m : monomials_P(dim, maxdeg))
        p = p + m * Rat(coef(rng));
    return p;
}

FormField random_field(int dim, int order, int maxdeg, std::mt19937_64& rng)
{
    FormField f(dim, order);
    for (auto& c : f.components)
        c = random_poly(dim, maxdeg, rng);
    return f;
}

} // namespace

TEST_CASE("superlinear degree")
{
    CHECK(superlinear_degree({2, 3, 1}) == 5);
    CHECK(superlinear_degree({1, 1, 1}) == 0);
    CHECK(superlinear_degree({4, 0}) == 4);
    CHECK(superlinear_degree({0, 0}) == 0);
}

TEST_CASE("basic arithmetic and evaluation")
{
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    Polynomial p = x * x * y - y * Rat(1, 2);
    CHECK(p.eval({Rat(2), Rat(3)}) == Rat(12) - Rat(3, 2));
    CHECK(p.degree() == 3);
    CHECK(p.degree(0) == 2);
    CHECK((p - p).is_zero());
    CHECK(p.derivative(0) == x * y * Rat(2));
}

TEST_CASE("substitution and integration")
{
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    // Trace on the edge x = 1: (x + y^2) -> 1 + t^2.
    std::vector<AxisExpr> edge = {AxisExpr{Rat(1), Rat(0), -1}, AxisExpr{Rat(0), Rat(1), 0}};
    Polynomial t = (x + y * y).substitute(edge, 1);
    CHECK(t == Polynomial::variable(1, 0) * Polynomial::variable(1, 0) +
              Polynomial::constant(1, 1));
    CHECK((x * x * y * y).integrate_ref() == Rat(4, 9));
    CHECK((x * y).integrate_ref() == 0);
    std::vector<Rat> lo = {Rat(0), Rat(0)}, hi = {Rat(1), Rat(2)};
    CHECK((x * y).integrate_box(lo, hi) == Rat(1));
}

TEST_CASE("space dimensions")
{
    CHECK(monomials_Q(2, 3).size() == 16);
    CHECK(monomials_P(2, 3).size() == 10);
    CHECK(monomials_S(2, 3).size() == 12);
    CHECK(monomials_H(2, 3).size() == 4);
    // S_3 in 2D is P_3 plus x^3 y and x y^3.
    auto s3 = monomials_S(2, 3);
    auto has = [&](const Expo& e) {
        for (const auto& m : s3)
            if (m.terms().begin()->first == e)
                return true;
        return false;
    };
    CHECK(has({3, 1}));
    CHECK(has({1, 3}));
    CHECK_FALSE(has({2, 2}));
    // S_1 = Q_1 in both dimensions.
    CHECK(monomials_S(2, 1).size() == monomials_Q(2, 1).size());
    CHECK(monomials_S(3, 1).size() == monomials_Q(3, 1).size());
}

TEST_CASE("S_3 in 3D equals Q_1 plus x_i^2 Q_1")
{
    std::vector<FormField> gens;
    for (const auto& m : monomials_Q(3, 1))
        gens.push_back(FormField::scalar(m, 0));
    for (int i = 0; i < 3; ++i) {
        Polynomial xi2 = Polynomial::variable(3, i) * Polynomial::variable(3, i);
        for (const auto& m : monomials_Q(3, 1))
            gens.push_back(FormField::scalar(xi2 * m, 0));
    }
    std::vector<FormField> s3;
    for (const auto& m : monomials_S(3, 3))
        s3.push_back(FormField::scalar(m, 0));
    CHECK(span_equal(gens, s3));
}

TEST_CASE("nesting P_r in S_r in Q_r")
{
    for (int dim = 2; dim <= 3; ++dim)
        for (int r = 0; r <= 5; ++r) {
            std::vector<FormField> p, s, q;
            for (const auto& m : monomials_P(dim, r))
                p.push_back(FormField::scalar(m, 0));
            for (const auto& m : monomials_S(dim, r))
                s.push_back(FormField::scalar(m, 0));
            for (const auto& m : monomials_Q(dim, r))
                q.push_back(FormField::scalar(m, 0));
            CHECK(span_contains(s, p));
            CHECK(span_contains(q, s));
        }
}

TEST_CASE("differential examples")
{
    Polynomial xy = Polynomial::monomial(2, {1, 1});
    FormField c = differential(FormField::scalar(xy, 0));
    CHECK(c.components[0] == -Polynomial::variable(2, 0));
    CHECK(c.components[1] == Polynomial::variable(2, 1));

    FormField v(2, 1);
    v.components[0] = Polynomial::variable(2, 0);
    CHECK(differential(v).components[0] == Polynomial::constant(2, 1));

    FormField g = differential(FormField::scalar(Polynomial::monomial(3, {3, 1, 0}), 0));
    CHECK(differential(g).is_zero());
}

TEST_CASE("koszul examples")
{
    FormField one2 = FormField::scalar(Polynomial::constant(2, 1), 2);
    FormField k = koszul(one2);
    CHECK(k.components[0] == Polynomial::variable(2, 0));
    CHECK(k.components[1] == Polynomial::variable(2, 1));

    std::mt19937_64 rng(7);
    FormField u3 = random_field(3, 3, 3, rng);
    CHECK(koszul(koszul(u3)).is_zero());
}

TEST_CASE("d after d and kappa after kappa vanish on random samples")
{
    std::mt19937_64 rng(20240811);
    for (int dim = 2; dim <= 3; ++dim)
        for (int k = 0; k + 2 <= dim; ++k)
            for (int s = 0; s < 200; ++s) {
                FormField u = random_field(dim, k, 3, rng);
                CHECK(differential(differential(u)).is_zero());
            }
    for (int dim = 2; dim <= 3; ++dim)
        for (int k = 2; k <= dim; ++k)
            for (int s = 0; s < 200; ++s) {
                FormField u = random_field(dim, k, 3, rng);
                CHECK(koszul(koszul(u)).is_zero());
            }
}

TEST_CASE("differential and koszul are linear")
{
    std::mt19937_64 rng(99);
    for (int dim = 2; dim <= 3; ++dim) {
        FormField a = random_field(dim, 1, 3, rng);
        FormField b = random_field(dim, 1, 3, rng);
        if (1 < dim)
            CHECK(differential(a + b * Rat(3)) ==
                  differential(a) + differential(b) * Rat(3));
        CHECK(koszul(a + b * Rat(3)) == koszul(a) + koszul(b) * Rat(3));
    }
}

TEST_CASE("reduce_span basics")
{
    Polynomial x = Polynomial::variable(2, 0);
    std::vector<FormField> vecs = {FormField::scalar(x, 0), FormField::scalar(x * Rat(2), 0)};
    CHECK(reduce_span(vecs).dimension == 1);
    CHECK(reduce_span({}).dimension == 0);
}

TEST_CASE("trimmed serendipity 2D r=3 1-form span has dimension 17")
{
    CHECK(shape_span(Family::Sminus, 2, 1, 3).size() == 17);
}

TEST_CASE("serendipity 1-form span in 3D at r=2 has dimension 48")
{
    CHECK(shape_span(Family::S, 3, 1, 2).size() == 48);
}

TEST_CASE("reduced 1-form span has dimension 12")
{
    CHECK(shape_span(Family::ReducedAdini, 2, 1, 2).size() == 12);
}

TEST_CASE("trimmed identities at the form-order ends")
{
    for (int dim = 2; dim <= 3; ++dim)
        for (int r = 1; r <= 3; ++r) {
            CHECK(span_equal(shape_span(Family::Sminus, dim, 0, r),
                             shape_span(Family::S, dim, 0, r)));
            CHECK(span_equal(shape_span(Family::Sminus, dim, dim, r),
                             shape_span(Family::S, dim, dim, r - 1)));
        }
}

TEST_CASE("legendre orthogonality")
{
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j < i; ++j)
            CHECK((legendre(1, 0, i) * legendre(1, 0, j)).integrate_ref() == 0);
    // Normalization P_n(1) = 1.
    for (int i = 0; i <= 6; ++i)
        CHECK(legendre(1, 0, i).eval({Rat(1)}) == 1);
}

TEST_CASE("json round trip")
{
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    Polynomial p = x * x * y * Rat(7, 3) - y + Polynomial::constant(2, Rat(-1, 2));
    CHECK(poly_from_json(poly_to_json(p), 2) == p);
}
