#include "fet/spaces.hpp"

#include <functional>
#include <stdexcept>

namespace fet {

namespace {

// Enumerate exponent tuples with each entry in [0, cap_i], keep those passing
// the filter, and emit them in graded-lex order (sorting via map insertion).
std::vector<Polynomial> enumerate(int dim, const std::vector<int>& caps,
                                  const std::function<bool(const Expo&)>& keep)
{
    std::map<Expo, char, GradedLex> accepted;
    Expo e(dim, 0);
    std::function<void(int)> rec = [&](int axis) {
        if (axis == dim) {
            if (keep(e))
                accepted[e] = 1;
            return;
        }
        for (int k = 0; k <= caps[axis]; ++k) {
            e[axis] = k;
            rec(axis + 1);
        }
        e[axis] = 0;
    };
    rec(0);
    std::vector<Polynomial> out;
    for (const auto& [expo, flag] : accepted)
        out.push_back(Polynomial::monomial(dim, expo));
    return out;
}

} // namespace

std::vector<Polynomial> monomials_P(int dim, int r)
{
    if (r < 0)
        return {};
    return enumerate(dim, std::vector<int>(dim, r),
                     [&](const Expo& e) { return total_degree(e) <= r; });
}

std::vector<Polynomial> monomials_Q(int dim, int r)
{
    if (r < 0)
        return {};
    return enumerate(dim, std::vector<int>(dim, r),
                     [](const Expo&) { return true; });
}

std::vector<Polynomial> monomials_Pmixed(const std::vector<int>& degrees)
{
    for (int d : degrees)
        if (d < 0)
            return {};
    return enumerate((int)degrees.size(), degrees,
                     [](const Expo&) { return true; });
}

std::vector<Polynomial> monomials_S(int dim, int r)
{
    if (r < 0)
        return {};
    if (r == 0) // the literal filter would admit every multilinear monomial
        return {Polynomial::constant(dim, 1)};
    // Exponents >= 2 are bounded by r; exponent 1 always allowed.
    return enumerate(dim, std::vector<int>(dim, r),
                     [&](const Expo& e) { return superlinear_degree(e) <= r; });
}

std::vector<Polynomial> monomials_H(int dim, int r)
{
    if (r < 0)
        return {};
    return enumerate(dim, std::vector<int>(dim, r),
                     [&](const Expo& e) { return total_degree(e) == r; });
}

std::vector<Polynomial> span_basis(const SpaceSpec& spec, int dim)
{
    switch (spec.kind) {
    case SpaceSpec::Kind::P:
        return monomials_P(dim, spec.degree);
    case SpaceSpec::Kind::Q:
        return monomials_Q(dim, spec.degree);
    case SpaceSpec::Kind::Pmixed:
        if ((int)spec.degrees.size() != dim)
            throw std::invalid_argument("span_basis: Pmixed degree count != dim");
        return monomials_Pmixed(spec.degrees);
    case SpaceSpec::Kind::S:
        return monomials_S(dim, spec.degree);
    case SpaceSpec::Kind::H:
        return monomials_H(dim, spec.degree);
    case SpaceSpec::Kind::Explicit: {
        std::vector<FormField> fields;
        for (const auto& p : spec.span)
            fields.push_back(FormField::scalar(p, 0));
        auto reduced = reduce_span(fields);
        std::vector<Polynomial> out;
        for (const auto& f : reduced.basis)
            out.push_back(f.components[0]);
        return out;
    }
    }
    throw std::logic_error("span_basis: unknown kind");
}

} // namespace fet
