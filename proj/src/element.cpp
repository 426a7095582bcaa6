#include "fet/element.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

namespace fet {

std::string family_name(Family f)
{
    switch (f) {
    case Family::Qminus: return "qminus";
    case Family::S: return "s";
    case Family::Sminus: return "sminus";
    case Family::Hermite: return "hermite";
    case Family::Adini: return "adini";
    case Family::TrimmedAdini: return "trimmed_adini";
    case Family::ReducedAdini: return "reduced_adini";
    case Family::ComponentPx: return "component_px";
    }
    throw std::logic_error("family_name");
}

std::optional<Family> family_from_name(const std::string& name)
{
    for (Family f : {Family::Qminus, Family::S, Family::Sminus, Family::Hermite,
                     Family::Adini, Family::TrimmedAdini, Family::ReducedAdini,
                     Family::ComponentPx})
        if (family_name(f) == name)
            return f;
    return std::nullopt;
}

namespace {

Polynomial zero1() { return Polynomial(1); }

// ---- DoF construction helpers -------------------------------------------

void add_vertex_evals(std::vector<DofFunctional>& dofs, int n)
{
    for (int v = 0; v < num_ref_vertices(n); ++v) {
        DofFunctional d;
        d.kind = DofFunctional::Kind::VertexEval;
        d.entity_dim = 0;
        d.entity_id = v;
        dofs.push_back(d);
    }
}

void add_vertex_evals_and_derivs(std::vector<DofFunctional>& dofs, int n)
{
    for (int v = 0; v < num_ref_vertices(n); ++v) {
        DofFunctional d;
        d.kind = DofFunctional::Kind::VertexEval;
        d.entity_dim = 0;
        d.entity_id = v;
        dofs.push_back(d);
        for (int a = 0; a < n; ++a) {
            DofFunctional g;
            g.kind = DofFunctional::Kind::VertexDeriv;
            g.entity_dim = 0;
            g.entity_id = v;
            g.index = a;
            dofs.push_back(g);
        }
    }
}

void add_vertex_vec_evals(std::vector<DofFunctional>& dofs, int n)
{
    for (int v = 0; v < num_ref_vertices(n); ++v)
        for (int c = 0; c < n; ++c) {
            DofFunctional d;
            d.kind = DofFunctional::Kind::VertexVecEval;
            d.entity_dim = 0;
            d.entity_id = v;
            d.index = c;
            dofs.push_back(d);
        }
}

// Legendre moments of degrees 0..maxdeg on every edge.
void add_edge_moments(std::vector<DofFunctional>& dofs, int n,
                      DofFunctional::Trace tr, int maxdeg)
{
    if (maxdeg < 0)
        return;
    for (int e = 0; e < num_ref_edges(n); ++e)
        for (int d = 0; d <= maxdeg; ++d) {
            DofFunctional m;
            m.kind = DofFunctional::Kind::EdgeMoment;
            m.entity_dim = 1;
            m.entity_id = e;
            m.trace = tr;
            m.weights = {legendre(1, 0, d)};
            m.legendre_degree = d;
            dofs.push_back(m);
        }
}

// Scalar-weight face moments; the same weight list on every face, expressed in
// the face's intrinsic frame coordinates.
void add_face_scalar_moments(std::vector<DofFunctional>& dofs,
                             DofFunctional::Trace tr,
                             const std::vector<Polynomial>& weights)
{
    for (int f = 0; f < 6; ++f)
        for (const auto& w : weights) {
            DofFunctional m;
            m.kind = DofFunctional::Kind::FaceMoment;
            m.entity_dim = 2;
            m.entity_id = f;
            m.trace = tr;
            m.weights = {w};
            dofs.push_back(m);
        }
}

// Tangential-pair face moments: each weight entry has one polynomial per
// in-plane frame axis.
void add_face_pair_moments(std::vector<DofFunctional>& dofs,
                           const std::vector<std::vector<Polynomial>>& weights)
{
    for (int f = 0; f < 6; ++f)
        for (const auto& w : weights) {
            DofFunctional m;
            m.kind = DofFunctional::Kind::FaceMoment;
            m.entity_dim = 2;
            m.entity_id = f;
            m.trace = DofFunctional::Trace::TangentialPair;
            m.weights = w;
            dofs.push_back(m);
        }
}

void add_interior_moments(std::vector<DofFunctional>& dofs, int n,
                          const std::vector<std::vector<Polynomial>>& weights)
{
    for (const auto& w : weights) {
        DofFunctional m;
        m.kind = DofFunctional::Kind::InteriorMoment;
        m.entity_dim = n;
        m.entity_id = 0;
        m.weights = w;
        dofs.push_back(m);
    }
}

// Scalar weights as one-entry vectors.
std::vector<std::vector<Polynomial>> scalar_weights(const std::vector<Polynomial>& ws)
{
    std::vector<std::vector<Polynomial>> out;
    for (const auto& w : ws)
        out.push_back({w});
    return out;
}

// Each scalar from `per_slot` placed in each of `slots` components in turn.
std::vector<std::vector<Polynomial>> slot_weights(int dim, int slots,
                                                  const std::vector<Polynomial>& per_slot)
{
    std::vector<std::vector<Polynomial>> out;
    for (int c = 0; c < slots; ++c)
        for (const auto& w : per_slot) {
            std::vector<Polynomial> entry(slots, Polynomial(dim));
            entry[c] = w;
            out.push_back(entry);
        }
    return out;
}

// Reduce a list of vector weights (drop zero / dependent entries, canonical
// form) by round-tripping through reduce_span on order-1 proxies.
std::vector<std::vector<Polynomial>> reduce_weights(int dim,
                                                    const std::vector<std::vector<Polynomial>>& ws)
{
    std::vector<FormField> fields;
    for (const auto& w : ws) {
        FormField f(dim, 1);
        f.components = w;
        f.components.resize(dim, Polynomial(dim));
        if (!f.is_zero())
            fields.push_back(f);
    }
    auto reduced = reduce_span(fields);
    std::vector<std::vector<Polynomial>> out;
    for (auto& f : reduced.basis) {
        f.components.resize(ws.empty() ? dim : ws[0].size(), Polynomial(dim));
        out.push_back(f.components);
    }
    return out;
}

// Same for pairs living in the 2-variable face frame.
std::vector<std::vector<Polynomial>> reduce_pair_weights(const std::vector<std::vector<Polynomial>>& ws)
{
    std::vector<FormField> fields;
    for (const auto& w : ws) {
        FormField f(2, 1);
        f.components = w;
        if (!f.is_zero())
            fields.push_back(f);
    }
    auto reduced = reduce_span(fields);
    std::vector<std::vector<Polynomial>> out;
    for (const auto& f : reduced.basis)
        out.push_back(f.components);
    return out;
}

// ---- shape space helpers -------------------------------------------------

std::vector<FormField> scalar_fields(const std::vector<Polynomial>& ps, int order)
{
    std::vector<FormField> out;
    for (const auto& p : ps)
        out.push_back(FormField::scalar(p, order));
    return out;
}

std::vector<FormField> component_fields(int n, int order,
                                        const std::vector<std::vector<Polynomial>>& per_component)
{
    std::vector<FormField> out;
    for (int c = 0; c < n; ++c)
        for (const auto& p : per_component[c]) {
            FormField f(n, order);
            f.components[c] = p;
            out.push_back(f);
        }
    return out;
}

// Per-axis degrees: `low` on the aligned axis, `high` elsewhere.
std::vector<int> aligned_degrees(int n, int axis, int low, int high)
{
    std::vector<int> d(n, high);
    d[axis] = low;
    return d;
}

FormField curl2(const Polynomial& p)
{
    FormField u = FormField::scalar(p, 0);
    return differential(u); // (-d2 p, d1 p)
}

// Serendipity shape spaces.  The tensor/total-degree parts are monomial; the
// extra generators follow the curl/div constructions and are reduced to a
// deterministic basis afterwards.
std::vector<FormField> shape_S(int n, int k, int r)
{
    if (k == 0)
        return scalar_fields(monomials_S(n, r), 0);
    if (k == n)
        return scalar_fields(monomials_P(n, r), n);
    if (n == 2) { // k == 1
        std::vector<FormField> gens;
        for (int c = 0; c < 2; ++c)
            for (const auto& p : monomials_P(2, r)) {
                FormField f(2, 1);
                f.components[c] = p;
                gens.push_back(f);
            }
        // curl(x^{r+1} y), curl(x y^{r+1})
        gens.push_back(curl2(Polynomial::monomial(2, {r + 1, 1})));
        gens.push_back(curl2(Polynomial::monomial(2, {1, r + 1})));
        return reduce_span(gens).basis;
    }
    if (k == 1) { // n == 3
        std::vector<FormField> gens;
        for (int c = 0; c < 3; ++c)
            for (const auto& p : monomials_P(3, r)) {
                FormField f(3, 1);
                f.components[c] = p;
                gens.push_back(f);
            }
        // Divergence-free extras: for each slot, w ranges over homogeneous
        // monomials of degree r-1 in the two complementary variables.
        auto push_triple = [&](int slot, const Polynomial& w) {
            // slot 0: (0, -zx w, xy w); slot 1: (yz w, 0, -xy w);
            // slot 2: (-yz w, zx w, 0)
            Polynomial x = Polynomial::variable(3, 0);
            Polynomial y = Polynomial::variable(3, 1);
            Polynomial z = Polynomial::variable(3, 2);
            FormField f(3, 1);
            if (slot == 0) {
                f.components[1] = -(z * x * w);
                f.components[2] = x * y * w;
            } else if (slot == 1) {
                f.components[0] = y * z * w;
                f.components[2] = -(x * y * w);
            } else {
                f.components[0] = -(y * z * w);
                f.components[1] = z * x * w;
            }
            gens.push_back(f);
        };
        for (int slot = 0; slot < 3; ++slot) {
            int v1 = slot == 0 ? 1 : 0;
            int v2 = slot == 2 ? 1 : 2;
            for (int a = 0; a <= r - 1; ++a) {
                Expo e(3, 0);
                e[v1] = a;
                e[v2] = r - 1 - a;
                push_triple(slot, Polynomial::monomial(3, e));
            }
        }
        // Gradients of superlinear-degree <= r+1 monomials of degree >= r+2.
        for (int total = r + 2; total <= 2 * (r + 1) + 1; ++total)
            for (const auto& m : monomials_H(3, total)) {
                Expo e = m.terms().begin()->first;
                if (superlinear_degree(e) <= r + 1)
                    gens.push_back(differential(FormField::scalar(m, 0)));
            }
        return reduce_span(gens).basis;
    }
    // n == 3, k == 2
    std::vector<FormField> gens;
    for (int c = 0; c < 3; ++c)
        for (const auto& p : monomials_P(3, r)) {
            FormField f(3, 2);
            f.components[c] = p;
            gens.push_back(f);
        }
    for (int i = 0; i <= r; ++i) {
        Polynomial x = Polynomial::variable(3, 0);
        Polynomial y = Polynomial::variable(3, 1);
        Polynomial z = Polynomial::variable(3, 2);
        Rat c(r + 2);
        {
            Polynomial w = Polynomial::monomial(3, {0, i, r - i});
            FormField f(3, 2);
            f.components[0] = -(x * w * c);
            f.components[1] = y * w;
            f.components[2] = z * w;
            gens.push_back(f);
        }
        {
            Polynomial w = Polynomial::monomial(3, {i, 0, r - i});
            FormField f(3, 2);
            f.components[0] = -(x * w);
            f.components[1] = y * w * c;
            f.components[2] = -(z * w);
            gens.push_back(f);
        }
        {
            Polynomial w = Polynomial::monomial(3, {i, r - i, 0});
            FormField f(3, 2);
            f.components[0] = x * w;
            f.components[1] = y * w;
            f.components[2] = -(z * w * c);
            gens.push_back(f);
        }
    }
    return reduce_span(gens).basis;
}

// Trimmed serendipity: S_{r-1} Lambda^k + koszul(S_{r-1} Lambda^{k+1}).
std::vector<FormField> shape_Sminus(int n, int k, int r)
{
    if (k == 0)
        return shape_S(n, 0, r);
    if (k == n)
        return scalar_fields(monomials_P(n, r - 1), n);
    std::vector<FormField> gens = shape_S(n, k, r - 1);
    for (const auto& f : shape_S(n, k + 1, r - 1))
        gens.push_back(koszul(f));
    return reduce_span(gens).basis;
}

std::vector<FormField> shape_Qminus(int n, int k, int r)
{
    if (k == 0)
        return scalar_fields(monomials_Q(n, r), 0);
    if (k == n)
        return scalar_fields(monomials_Q(n, r - 1), n);
    std::vector<std::vector<Polynomial>> per(n);
    for (int c = 0; c < n; ++c) {
        // Codim-1 forms (flux type, k = n-1) carry the full degree on the
        // aligned axis; the 3D edge-type 1-forms carry it on the other axes.
        int aligned = (k == n - 1) ? r : r - 1;
        int other = (k == n - 1) ? r - 1 : r;
        per[c] = monomials_Pmixed(aligned_degrees(n, c, aligned, other));
    }
    return component_fields(n, k, per);
}

std::vector<FormField> shape_ReducedAdini(int n, int k, int r)
{
    if (n != 2)
        throw std::invalid_argument("reduced_adini: 2D only");
    if (k == 2 && r == 1)
        return scalar_fields(monomials_P(2, 0), 2);
    if (k != 1 || r != 2)
        throw std::invalid_argument("reduced_adini: only Lambda^1 r=2, Lambda^2 r=1");
    std::vector<FormField> gens;
    for (int c = 0; c < 2; ++c)
        for (const auto& p : monomials_P(2, 1)) {
            FormField f(2, 1);
            f.components[c] = p;
            gens.push_back(f);
        }
    for (const Expo& e : {Expo{3, 0}, Expo{0, 3}, Expo{2, 1}, Expo{1, 2},
                          Expo{3, 1}, Expo{1, 3}})
        gens.push_back(curl2(Polynomial::monomial(2, e)));
    return reduce_span(gens).basis;
}

std::vector<FormField> shape_ComponentPx(int n)
{
    std::vector<FormField> gens;
    if (n == 3) {
        // {1,x,x^2} x {1,y} x {1,z} plus the serendipity-style tail in (y,z).
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 1; ++b)
                for (int c = 0; c <= 1; ++c)
                    gens.push_back(FormField::scalar(Polynomial::monomial(3, {a, b, c}), 0));
        for (const Expo& e : {Expo{0, 2, 0}, Expo{0, 0, 2}, Expo{0, 3, 0},
                              Expo{0, 2, 1}, Expo{0, 1, 2}, Expo{0, 0, 3},
                              Expo{0, 3, 1}, Expo{0, 1, 3}})
            gens.push_back(FormField::scalar(Polynomial::monomial(3, e), 0));
    } else {
        for (const auto& p : monomials_P(2, 2))
            gens.push_back(FormField::scalar(p, 0));
        gens.push_back(FormField::scalar(Polynomial::monomial(2, {3, 0}), 0));
        gens.push_back(FormField::scalar(Polynomial::monomial(2, {1, 2}), 0));
    }
    return reduce_span(gens).basis;
}

// Interior weights for the trimmed (S-) family.
std::vector<std::vector<Polynomial>> sminus_interior_weights(int n, int k, int r)
{
    std::vector<std::vector<Polynomial>> ws;
    if (n == 2) { // k == 1: [P_{r-3}]^2 + grad H_{r-1}
        // The flux proxy is rotated, so the weight space rotates with it:
        // pairing against gradients, not curls, keeps the bubble pairing
        // nondegenerate (the curl variant drops rank at r = 3, 5).
        for (auto& w : slot_weights(2, 2, monomials_P(2, r - 3)))
            ws.push_back(w);
        for (const auto& h : monomials_H(2, r - 1))
            ws.push_back({h.derivative(0), h.derivative(1)});
        return reduce_weights(2, ws);
    }
    if (k == 1) { // [P_{r-5}]^3 + curl [H_{r-3}]^3
        for (auto& w : slot_weights(3, 3, monomials_P(3, r - 5)))
            ws.push_back(w);
        for (int c = 0; c < 3; ++c)
            for (const auto& h : monomials_H(3, r - 3)) {
                FormField f(3, 1);
                f.components[c] = h;
                ws.push_back(differential(f).components);
            }
        return reduce_weights(3, ws);
    }
    // k == 2: [P_{r-3}]^3 + grad H_{r-1}
    for (auto& w : slot_weights(3, 3, monomials_P(3, r - 3)))
        ws.push_back(w);
    for (const auto& h : monomials_H(3, r - 1))
        ws.push_back(differential(FormField::scalar(h, 0)).components);
    return reduce_weights(3, ws);
}

// Face tangential-pair weights for the trimmed family, in face coordinates:
// [P_{r-3}(f)]^2 + curl_f H_{r-1}(f).  The tangential trace pairs against
// the rotated gradients; the unrotated variant degenerates at r = 3, 5.
std::vector<std::vector<Polynomial>> sminus_face_pair_weights(int r)
{
    std::vector<std::vector<Polynomial>> ws = slot_weights(2, 2, monomials_P(2, r - 3));
    for (const auto& h : monomials_H(2, r - 1))
        ws.push_back({h.derivative(1), h.derivative(0) * Rat(-1)});
    return reduce_pair_weights(ws);
}

// Face tangential-pair weights for the tensor family: the component along
// frame axis j is paired with P(r-1 along axis j, r-2 along the other).
std::vector<std::vector<Polynomial>> qminus_face_pair_weights(int r)
{
    std::vector<std::vector<Polynomial>> ws;
    for (const auto& w : monomials_Pmixed({r - 1, r - 2}))
        ws.push_back({w, Polynomial(2)});
    for (const auto& w : monomials_Pmixed({r - 2, r - 1}))
        ws.push_back({Polynomial(2), w});
    return ws;
}

std::vector<std::vector<Polynomial>> qminus_interior_weights(int n, int k, int r)
{
    std::vector<std::vector<Polynomial>> ws;
    for (int c = 0; c < n; ++c) {
        // Mirrors the shape alignment: one degree lower per axis than the
        // shape component it pairs against.
        int aligned = (k == n - 1) ? r - 2 : r - 1;
        int other = (k == n - 1) ? r - 1 : r - 2;
        for (const auto& w : monomials_Pmixed(aligned_degrees(n, c, aligned, other))) {
            std::vector<Polynomial> entry(n, Polynomial(n));
            entry[c] = w;
            ws.push_back(entry);
        }
    }
    return ws;
}

DofFunctional::Trace edge_trace(int n, int k)
{
    if (k == 0)
        return DofFunctional::Trace::Scalar;
    return n == 2 ? DofFunctional::Trace::Normal : DofFunctional::Trace::Tangential;
}

} // namespace

// ---- legality ------------------------------------------------------------

bool element_defined(Family f, int n, int k, int r)
{
    if (n < 2 || n > 3 || k < 0 || k > n)
        return false;
    switch (f) {
    case Family::Qminus:
        return r >= 1;
    case Family::S:
        return k == n ? r >= 0 : r >= 1;
    case Family::Sminus:
        return r >= 1;
    case Family::Hermite:
        if (k == 0) return r >= 3;
        if (k == 1) return r >= 2;
        return r >= 1;
    case Family::Adini:
        if (k == 0) return r >= 3;
        if (k == n) return r >= 0;
        return r >= 1;
    case Family::TrimmedAdini:
        if (k == 0) return r >= 3;
        if (k == 1) return r >= 2;
        return r >= 1;
    case Family::ReducedAdini:
        return n == 2 && ((k == 1 && r == 2) || (k == 2 && r == 1));
    case Family::ComponentPx:
        return k == 0 && r == 2;
    }
    return false;
}

// ---- apply_dof -----------------------------------------------------------

Rat apply_dof(const DofFunctional& d, const FormField& u)
{
    const int n = u.dim;
    switch (d.kind) {
    case DofFunctional::Kind::VertexEval:
        return u.components[0].eval(ref_vertex(n, d.entity_id));
    case DofFunctional::Kind::VertexDeriv:
        return u.components[0].derivative(d.index).eval(ref_vertex(n, d.entity_id));
    case DofFunctional::Kind::VertexVecEval:
        return u.components[d.index].eval(ref_vertex(n, d.entity_id));
    case DofFunctional::Kind::EdgeMoment: {
        RefEntity e = ref_edge(n, d.entity_id);
        int comp;
        if (d.trace == DofFunctional::Trace::Scalar)
            comp = 0;
        else if (d.trace == DofFunctional::Trace::Tangential)
            comp = e.axis;
        else // Normal, 2D
            comp = 1 - e.axis;
        Polynomial t = trace_on(e, u.components[comp]);
        return (t * d.weights[0]).integrate_ref();
    }
    case DofFunctional::Kind::FaceMoment: {
        RefEntity f = ref_face(n, d.entity_id);
        if (d.trace == DofFunctional::Trace::TangentialPair) {
            Polynomial acc(2);
            for (int j = 0; j < 2; ++j)
                acc = acc + trace_on(f, u.components[f.frame[j]]) * d.weights[j];
            return acc.integrate_ref();
        }
        int comp = d.trace == DofFunctional::Trace::Scalar ? 0 : f.normal_axis;
        Polynomial t = trace_on(f, u.components[comp]);
        return (t * d.weights[0]).integrate_ref();
    }
    case DofFunctional::Kind::InteriorMoment: {
        Polynomial acc(n);
        for (std::size_t c = 0; c < u.components.size(); ++c)
            acc = acc + u.components[c] * d.weights[c];
        return acc.integrate_ref();
    }
    }
    throw std::logic_error("apply_dof");
}

// ---- shape spans ---------------------------------------------------------

std::vector<FormField> shape_span(Family f, int n, int k, int r)
{
    switch (f) {
    case Family::Qminus:
    case Family::Hermite:
        return shape_Qminus(n, k, r);
    case Family::S:
    case Family::Adini:
        return shape_S(n, k, r);
    case Family::Sminus:
    case Family::TrimmedAdini:
        return shape_Sminus(n, k, r);
    case Family::ReducedAdini:
        return shape_ReducedAdini(n, k, r);
    case Family::ComponentPx:
        return shape_ComponentPx(n);
    }
    throw std::logic_error("shape_span");
}

// ---- element construction ------------------------------------------------

ElementDef build_element(Family fam, int n, int k, int r)
{
    if (!element_defined(fam, n, k, r))
        throw std::invalid_argument("build_element: no element " + family_name(fam) +
                                    " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                    " r=" + std::to_string(r));
    ElementDef e;
    e.family = fam;
    e.dim = n;
    e.order = k;
    e.degree = r;
    e.shape_basis = shape_span(fam, n, k, r);
    auto& dofs = e.dofs;

    switch (fam) {
    case Family::Qminus:
    case Family::Hermite: {
        const bool hermite = fam == Family::Hermite && k <= 1;
        if (k == 0) {
            if (hermite)
                add_vertex_evals_and_derivs(dofs, n);
            else
                add_vertex_evals(dofs, n);
            add_edge_moments(dofs, n, DofFunctional::Trace::Scalar,
                             hermite ? r - 4 : r - 2);
            if (n == 3)
                add_face_scalar_moments(dofs, DofFunctional::Trace::Scalar,
                                        monomials_Q(2, r - 2));
            add_interior_moments(dofs, n, scalar_weights(monomials_Q(n, r - 2)));
        } else if (k == n) {
            add_interior_moments(dofs, n, scalar_weights(monomials_Q(n, r - 1)));
        } else if (k == 1) {
            if (hermite)
                add_vertex_vec_evals(dofs, n);
            add_edge_moments(dofs, n, edge_trace(n, 1), hermite ? r - 3 : r - 1);
            if (n == 3)
                add_face_pair_moments(dofs, qminus_face_pair_weights(r));
            add_interior_moments(dofs, n, qminus_interior_weights(n, 1, r));
        } else { // n == 3, k == 2
            add_face_scalar_moments(dofs, DofFunctional::Trace::Normal,
                                    monomials_Q(2, r - 1));
            add_interior_moments(dofs, n, qminus_interior_weights(n, 2, r));
        }
        break;
    }
    case Family::S:
    case Family::Adini: {
        const bool adini = fam == Family::Adini && k <= 1;
        if (k == 0) {
            if (adini)
                add_vertex_evals_and_derivs(dofs, n);
            else
                add_vertex_evals(dofs, n);
            add_edge_moments(dofs, n, DofFunctional::Trace::Scalar,
                             adini ? r - 4 : r - 2);
            if (n == 3)
                add_face_scalar_moments(dofs, DofFunctional::Trace::Scalar,
                                        monomials_P(2, r - 4));
            add_interior_moments(dofs, n,
                                 scalar_weights(monomials_P(n, n == 2 ? r - 4 : r - 6)));
        } else if (k == n) {
            add_interior_moments(dofs, n, scalar_weights(monomials_P(n, r)));
        } else if (k == 1) {
            if (adini)
                add_vertex_vec_evals(dofs, n);
            add_edge_moments(dofs, n, edge_trace(n, 1), adini ? r - 2 : r);
            if (n == 3)
                add_face_pair_moments(dofs, slot_weights(2, 2, monomials_P(2, r - 2)));
            add_interior_moments(dofs, n,
                                 slot_weights(n, n, monomials_P(n, n == 2 ? r - 2 : r - 4)));
        } else { // n == 3, k == 2
            add_face_scalar_moments(dofs, DofFunctional::Trace::Normal,
                                    monomials_P(2, r));
            add_interior_moments(dofs, n, slot_weights(3, 3, monomials_P(3, r - 2)));
        }
        break;
    }
    case Family::Sminus:
    case Family::TrimmedAdini: {
        const bool adini = fam == Family::TrimmedAdini && k <= 1;
        if (k == 0) {
            if (adini)
                add_vertex_evals_and_derivs(dofs, n);
            else
                add_vertex_evals(dofs, n);
            add_edge_moments(dofs, n, DofFunctional::Trace::Scalar,
                             adini ? r - 4 : r - 2);
            if (n == 3)
                add_face_scalar_moments(dofs, DofFunctional::Trace::Scalar,
                                        monomials_P(2, r - 4));
            add_interior_moments(dofs, n,
                                 scalar_weights(monomials_P(n, n == 2 ? r - 4 : r - 6)));
        } else if (k == n) {
            add_interior_moments(dofs, n, scalar_weights(monomials_P(n, r - 1)));
        } else if (k == 1) {
            if (adini)
                add_vertex_vec_evals(dofs, n);
            add_edge_moments(dofs, n, edge_trace(n, 1), adini ? r - 3 : r - 1);
            if (n == 3)
                add_face_pair_moments(dofs, sminus_face_pair_weights(r));
            add_interior_moments(dofs, n, sminus_interior_weights(n, 1, r));
        } else { // n == 3, k == 2
            add_face_scalar_moments(dofs, DofFunctional::Trace::Normal,
                                    monomials_P(2, r - 1));
            add_interior_moments(dofs, n, sminus_interior_weights(n, 2, r));
        }
        break;
    }
    case Family::ReducedAdini: {
        if (k == 1) {
            add_vertex_vec_evals(dofs, 2);
            add_edge_moments(dofs, 2, DofFunctional::Trace::Normal, 0);
        } else {
            add_interior_moments(dofs, 2, scalar_weights({Polynomial::constant(2, 1)}));
        }
        break;
    }
    case Family::ComponentPx: {
        add_vertex_evals(dofs, n);
        // Means on the edges that constrain the x-direction behaviour:
        // 3D: the x-parallel edges; 2D: the two edges x = +-1.
        if (n == 3) {
            for (int eid = 0; eid < 4; ++eid) {
                DofFunctional m;
                m.kind = DofFunctional::Kind::EdgeMoment;
                m.entity_dim = 1;
                m.entity_id = eid;
                m.trace = DofFunctional::Trace::Scalar;
                m.weights = {legendre(1, 0, 0)};
                m.legendre_degree = 0;
                dofs.push_back(m);
            }
            for (int fid = 2; fid < 6; ++fid) {
                DofFunctional m;
                m.kind = DofFunctional::Kind::FaceMoment;
                m.entity_dim = 2;
                m.entity_id = fid;
                m.trace = DofFunctional::Trace::Scalar;
                m.weights = {Polynomial::constant(2, 1)};
                dofs.push_back(m);
            }
        } else {
            for (int eid = 2; eid < 4; ++eid) {
                DofFunctional m;
                m.kind = DofFunctional::Kind::EdgeMoment;
                m.entity_dim = 1;
                m.entity_id = eid;
                m.trace = DofFunctional::Trace::Scalar;
                m.weights = {legendre(1, 0, 0)};
                m.legendre_degree = 0;
                dofs.push_back(m);
            }
        }
        // Interior weights: the DoF-bubbles of the boundary functionals.
        ElementDef partial = e;
        partial.dofs = dofs;
        auto bubbles = bubble_space(partial);
        std::vector<std::vector<Polynomial>> ws;
        for (const auto& b : bubbles)
            ws.push_back({b.components[0]});
        add_interior_moments(dofs, n, ws);
        break;
    }
    }

    if (e.dofs.size() != e.shape_basis.size())
        throw std::logic_error("build_element: dof count " + std::to_string(e.dofs.size()) +
                               " != shape dim " + std::to_string(e.shape_basis.size()) +
                               " for " + family_name(fam) + " n=" + std::to_string(n) +
                               " k=" + std::to_string(k) + " r=" + std::to_string(r));
    return e;
}

// ---- derived data --------------------------------------------------------

QMat vandermonde(const ElementDef& e)
{
    QMat m(e.dofs.size(), e.shape_basis.size());
    for (std::size_t i = 0; i < e.dofs.size(); ++i)
        for (std::size_t j = 0; j < e.shape_basis.size(); ++j)
            m(i, j) = apply_dof(e.dofs[i], e.shape_basis[j]);
    return m;
}

NodalBasis nodal_basis(const ElementDef& e)
{
    auto inv = vandermonde(e).inverse();
    if (!inv)
        throw std::runtime_error("nodal_basis: element is not unisolvent (" +
                                 family_name(e.family) + " n=" + std::to_string(e.dim) +
                                 " k=" + std::to_string(e.order) +
                                 " r=" + std::to_string(e.degree) + ")");
    NodalBasis nb;
    nb.element = e;
    const std::size_t m = e.shape_basis.size();
    for (std::size_t j = 0; j < m; ++j) {
        FormField phi(e.dim, e.order);
        for (std::size_t i = 0; i < m; ++i) {
            if ((*inv)(i, j) == 0)
                continue;
            phi = phi + e.shape_basis[i] * (*inv)(i, j);
        }
        nb.duals.push_back(phi);
    }
    return nb;
}

std::vector<FormField> bubble_space(const ElementDef& e)
{
    std::vector<const DofFunctional*> boundary;
    for (const auto& d : e.dofs)
        if (d.entity_dim < e.dim)
            boundary.push_back(&d);
    QMat m(boundary.size(), e.shape_basis.size());
    for (std::size_t i = 0; i < boundary.size(); ++i)
        for (std::size_t j = 0; j < e.shape_basis.size(); ++j)
            m(i, j) = apply_dof(*boundary[i], e.shape_basis[j]);
    std::vector<FormField> out;
    for (const auto& coeffs : m.kernel()) {
        FormField f(e.dim, e.order);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            if (coeffs[j] == 0)
                continue;
            f = f + e.shape_basis[j] * coeffs[j];
        }
        out.push_back(f);
    }
    return out;
}

std::vector<int> dof_table(const ElementDef& e)
{
    std::vector<int> counts(e.dim + 1, 0);
    for (const auto& d : e.dofs)
        ++counts[d.entity_dim];
    return counts;
}

std::string element_info_json(const ElementDef& e)
{
    using nlohmann::json;
    json doc;
    doc["family"] = family_name(e.family);
    doc["dim"] = e.dim;
    doc["form_order"] = e.order;
    doc["degree"] = e.degree;
    doc["space_dim"] = e.shape_basis.size();
    doc["dofs_per_entity_dim"] = dof_table(e);

    auto poly_json = [](const Polynomial& p) {
        json arr = json::array();
        for (const auto& [expo, coef] : p.terms()) {
            json term;
            term["exponents"] = expo;
            term["num"] = coef.get_num().get_str();
            term["den"] = coef.get_den().get_str();
            arr.push_back(term);
        }
        return arr;
    };

    json basis = json::array();
    for (const auto& f : e.shape_basis) {
        json comps = json::array();
        for (const auto& c : f.components)
            comps.push_back(poly_json(c));
        basis.push_back(comps);
    }
    doc["shape_basis"] = basis;

    auto kind_name = [](DofFunctional::Kind k) {
        switch (k) {
        case DofFunctional::Kind::VertexEval: return "vertex_eval";
        case DofFunctional::Kind::VertexDeriv: return "vertex_deriv";
        case DofFunctional::Kind::VertexVecEval: return "vertex_component";
        case DofFunctional::Kind::EdgeMoment: return "edge_moment";
        case DofFunctional::Kind::FaceMoment: return "face_moment";
        case DofFunctional::Kind::InteriorMoment: return "interior_moment";
        }
        return "?";
    };
    auto trace_name = [](DofFunctional::Trace t) {
        switch (t) {
        case DofFunctional::Trace::Scalar: return "scalar";
        case DofFunctional::Trace::Tangential: return "tangential";
        case DofFunctional::Trace::Normal: return "normal";
        case DofFunctional::Trace::TangentialPair: return "tangential_pair";
        }
        return "?";
    };

    json dofs = json::array();
    for (const auto& d : e.dofs) {
        json jd;
        jd["kind"] = kind_name(d.kind);
        jd["entity_dim"] = d.entity_dim;
        jd["entity_id"] = d.entity_id;
        if (d.kind == DofFunctional::Kind::VertexDeriv ||
            d.kind == DofFunctional::Kind::VertexVecEval)
            jd["index"] = d.index;
        if (d.kind == DofFunctional::Kind::EdgeMoment ||
            d.kind == DofFunctional::Kind::FaceMoment)
            jd["trace"] = trace_name(d.trace);
        if (!d.weights.empty()) {
            json ws = json::array();
            for (const auto& w : d.weights)
                ws.push_back(poly_json(w));
            jd["weights"] = ws;
        }
        dofs.push_back(jd);
    }
    doc["dofs"] = dofs;
    return doc.dump(2);
}

} // namespace fet
