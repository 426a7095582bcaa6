#pragma once

// Constructors for the named polynomial spaces: total-degree P_r, tensor Q_r,
// per-axis P_{r1..rn}, the superlinear-degree (serendipity) space S_r and the
// homogeneous space H_r.  All bases are monomial lists in graded-lex order.

#include "fet/poly.hpp"

namespace fet {

std::vector<Polynomial> monomials_P(int dim, int r);
std::vector<Polynomial> monomials_Q(int dim, int r);
std::vector<Polynomial> monomials_Pmixed(const std::vector<int>& degrees);
std::vector<Polynomial> monomials_S(int dim, int r); // superlinear degree <= r
std::vector<Polynomial> monomials_H(int dim, int r); // total degree == r

struct SpaceSpec {
    enum class Kind { P, Q, Pmixed, S, H, Explicit };
    Kind kind = Kind::P;
    int degree = 0;                    // P, Q, S, H
    std::vector<int> degrees;          // Pmixed, one entry per axis
    std::vector<Polynomial> span;      // Explicit (reduced on use)
};

std::vector<Polynomial> span_basis(const SpaceSpec& spec, int dim);

} // namespace fet
