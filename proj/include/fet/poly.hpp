#pragma once

// Exact-rational multivariate polynomials and k-form vector proxies.
//
// Polynomials live in n in {2,3} variables on the reference cell [-1,1]^n.
// Terms are keyed by exponent multi-index in graded-lex order so every
// generated basis is reproducible byte-for-byte.

#include "fet/ratmat.hpp"

#include <map>
#include <string>
#include <vector>

namespace fet {

using Expo = std::vector<int>;

int total_degree(const Expo& e);

// Total degree counting only variables entering with exponent >= 2.
int superlinear_degree(const Expo& e);

// Graded lexicographic: lower total degree first, then lex on exponents.
struct GradedLex {
    bool operator()(const Expo& a, const Expo& b) const;
};

// Describes x_i of the ambient space in terms of the target variables:
// x_i = shift + scale * t_var  (var < 0 means the coordinate is constant).
struct AxisExpr {
    Rat shift;
    Rat scale;
    int var = -1;
};

class Polynomial {
public:
    explicit Polynomial(int dim = 2) : dim_(dim) {}

    static Polynomial constant(int dim, const Rat& c);
    static Polynomial monomial(int dim, const Expo& e, const Rat& c = Rat(1));
    static Polynomial variable(int dim, int axis);

    int dim() const { return dim_; }
    const std::map<Expo, Rat, GradedLex>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;          // max total degree, -1 for the zero polynomial
    int degree(int axis) const;  // max exponent of one variable

    void add_term(const Expo& e, const Rat& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rat& c) const;
    bool operator==(const Polynomial& o) const;

    Polynomial derivative(int axis) const;
    Rat eval(const std::vector<Rat>& point) const;

    // Substitute x_i = axes[i].shift + axes[i].scale * t_{axes[i].var},
    // producing a polynomial in out_dim variables.  Used for facet traces
    // (some coordinates frozen) and for affine mesh maps.
    Polynomial substitute(const std::vector<AxisExpr>& axes, int out_dim) const;

    // Exact integral over the box prod [lo_i, hi_i].
    Rat integrate_box(const std::vector<Rat>& lo, const std::vector<Rat>& hi) const;
    // Exact integral over the reference cell [-1,1]^dim.
    Rat integrate_ref() const;

    std::string str() const; // human-readable, e.g. "x^2*y - 1/2"

private:
    int dim_;
    std::map<Expo, Rat, GradedLex> terms_;
};

// Number of vector-proxy components of a k-form in n variables:
// 1 for k = 0 and k = n, otherwise n.
int proxy_components(int dim, int order);

// A k-form in vector proxy.
struct FormField {
    int dim = 2;
    int order = 0;
    std::vector<Polynomial> components;

    FormField() = default;
    FormField(int dim, int order);
    static FormField scalar(const Polynomial& p, int order); // order 0 or dim

    bool is_zero() const;
    FormField operator+(const FormField& o) const;
    FormField operator-(const FormField& o) const;
    FormField operator*(const Rat& c) const;
    bool operator==(const FormField& o) const;
};

// Exterior derivative in vector proxy: grad / 2D-curl / 3D-curl / div
// depending on (dim, order).  Requires order < dim.
FormField differential(const FormField& u);

// Koszul operator with origin at the reference-cell centre; requires order >= 1.
FormField koszul(const FormField& u);

// Exact row reduction of a spanning set to a basis (deterministic: columns
// ordered by component index then graded-lex exponent).
struct SpanBasis {
    std::vector<FormField> basis;
    std::size_t dimension = 0;
};
SpanBasis reduce_span(const std::vector<FormField>& vectors);

// True iff every element of `sub` lies in span(of).
bool span_contains(const std::vector<FormField>& of, const std::vector<FormField>& sub);
bool span_equal(const std::vector<FormField>& a, const std::vector<FormField>& b);

// Coefficient row of u against the monomial support of a fixed spanning layout.
// Used internally and by the element code for exact span computations.

// Legendre polynomial of given degree in one designated variable of an
// n-variable polynomial ring (standard recurrence, rational coefficients).
Polynomial legendre(int dim, int axis, int degree);

// JSON serialization: list of {exponents, num, den} objects (num/den strings).
std::string poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const std::string& json, int dim);

} // namespace fet
