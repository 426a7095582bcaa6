#include "fet/xform.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fet {

namespace {

bool is_vertex_kind(const DofFunctional& d) { return d.entity_dim == 0; }

int kind_rank(DofFunctional::Kind k)
{
    switch (k) {
    case DofFunctional::Kind::VertexEval: return 0;
    case DofFunctional::Kind::VertexDeriv: return 1;
    case DofFunctional::Kind::VertexVecEval: return 2;
    default: return 3;
    }
}

// Canonical element ordering: vertices (id, kind, index), then edges
// (id, degree), then faces, then interior, preserving relative order inside
// the face/interior groups.
void sort_dofs(std::vector<DofFunctional>& dofs)
{
    std::stable_sort(dofs.begin(), dofs.end(),
                     [](const DofFunctional& a, const DofFunctional& b) {
        if (a.entity_dim != b.entity_dim)
            return a.entity_dim < b.entity_dim;
        if (a.entity_id != b.entity_id)
            return a.entity_id < b.entity_id;
        if (a.entity_dim == 0) {
            if (kind_rank(a.kind) != kind_rank(b.kind))
                return kind_rank(a.kind) < kind_rank(b.kind);
            return a.index < b.index;
        }
        if (a.entity_dim == 1)
            return a.legendre_degree < b.legendre_degree;
        return false;
    });
}

Family transferred_family(Family f)
{
    switch (f) {
    case Family::Qminus: return Family::Hermite;
    case Family::S: return Family::Adini;
    case Family::Sminus: return Family::TrimmedAdini;
    default:
        throw std::invalid_argument("dof_transfer: source family already transferred");
    }
}

// Weight span of the face/interior functionals of an element, grouped per
// entity, expressed as vector fields over the entity's intrinsic coordinates.
std::map<std::pair<int, int>, std::vector<FormField>>
moment_weight_fields(const ElementDef& e)
{
    std::map<std::pair<int, int>, std::vector<FormField>> out;
    for (const auto& d : e.dofs) {
        if (d.entity_dim < 2)
            continue;
        int wdim = d.entity_dim;
        FormField f(wdim, d.weights.size() == 1 ? 0 : 1);
        f.components = d.weights;
        out[{d.entity_dim, d.entity_id}].push_back(f);
    }
    return out;
}

std::vector<std::vector<Rat>> dof_actions(const ElementDef& e,
                                          const std::vector<FormField>& probes)
{
    std::vector<std::vector<Rat>> rows;
    for (const auto& d : e.dofs) {
        std::vector<Rat> row;
        for (const auto& p : probes)
            row.push_back(apply_dof(d, p));
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace

bool transfer_applicable(const ElementDef& e)
{
    if (e.order > 1)
        return false;
    for (const auto& d : e.dofs)
        if (d.kind == DofFunctional::Kind::VertexDeriv ||
            d.kind == DofFunctional::Kind::VertexVecEval)
            return false;
    std::map<int, int> per_edge;
    for (const auto& d : e.dofs)
        if (d.kind == DofFunctional::Kind::EdgeMoment)
            ++per_edge[d.entity_id];
    if ((int)per_edge.size() != num_ref_edges(e.dim))
        return false;
    for (const auto& [id, count] : per_edge)
        if (count < 2)
            return false;
    return true;
}

ElementDef dof_transfer(const ElementDef& e, TransferReport* report)
{
    if (!transfer_applicable(e))
        throw std::invalid_argument("dof_transfer: not applicable");

    // Highest two Legendre degrees on each edge.
    std::map<int, std::vector<int>> degs;
    for (const auto& d : e.dofs)
        if (d.kind == DofFunctional::Kind::EdgeMoment)
            degs[d.entity_id].push_back(d.legendre_degree);
    auto drop = [&](const DofFunctional& d) {
        if (d.kind != DofFunctional::Kind::EdgeMoment)
            return false;
        auto& v = degs[d.entity_id];
        std::vector<int> s = v;
        std::sort(s.begin(), s.end());
        return d.legendre_degree >= s[s.size() - 2];
    };

    ElementDef out = e;
    out.family = transferred_family(e.family);
    out.dofs.clear();
    int removed = 0;
    for (const auto& d : e.dofs) {
        if (drop(d)) {
            ++removed;
            continue;
        }
        out.dofs.push_back(d);
    }

    int added = 0;
    const int n = e.dim;
    for (int v = 0; v < num_ref_vertices(n); ++v)
        for (int i = 0; i < n; ++i) {
            DofFunctional d;
            d.kind = e.order == 0 ? DofFunctional::Kind::VertexDeriv
                                  : DofFunctional::Kind::VertexVecEval;
            d.entity_dim = 0;
            d.entity_id = v;
            d.index = i;
            out.dofs.push_back(d);
            ++added;
        }
    sort_dofs(out.dofs);

    if (out.dofs.size() != out.shape_basis.size())
        throw std::logic_error("dof_transfer: dof count mismatch");
    if (report)
        *report = {removed, added};
    return out;
}

ElementDef serendipity_reduce(const ElementDef& e, Family target, ReduceReport* report)
{
    if (target != Family::S && target != Family::Sminus)
        throw std::invalid_argument("serendipity_reduce: target must be S or S-");

    const int n = e.dim, k = e.order, r = e.degree;
    bool transferred = false;
    for (const auto& d : e.dofs)
        if (d.kind == DofFunctional::Kind::VertexDeriv ||
            d.kind == DofFunctional::Kind::VertexVecEval)
            transferred = true;
    int rt;
    switch (e.family) {
    case Family::Qminus:
    case Family::Hermite:
        rt = target == Family::S ? r - k : r;
        break;
    case Family::S:
    case Family::Adini:
        if (target != Family::S)
            throw std::invalid_argument("serendipity_reduce: S-family source needs target S");
        rt = r; // identity
        break;
    case Family::Sminus:
    case Family::TrimmedAdini:
        if (target != Family::Sminus)
            throw std::invalid_argument("serendipity_reduce: S--family source needs target S-");
        rt = r; // identity
        break;
    default:
        throw std::invalid_argument("serendipity_reduce: unsupported source family");
    }
    Family actual = target;
    if (transferred)
        actual = target == Family::S ? Family::Adini : Family::TrimmedAdini;
    if (!element_defined(actual, n, k, rt))
        throw std::invalid_argument("serendipity_reduce: no target element at this degree");

    ElementDef t = build_element(actual, n, k, rt);

    // Shape containment.
    if (!span_contains(e.shape_basis, t.shape_basis))
        throw std::invalid_argument("serendipity_reduce: target shape not contained");
    // Index-space containment on every entity of dimension >= 2.
    auto src = moment_weight_fields(e);
    auto tgt = moment_weight_fields(t);
    for (const auto& [ent, fields] : tgt) {
        if (ent.first < n && !span_contains(src[ent], fields))
            throw std::invalid_argument("serendipity_reduce: face index space not contained");
    }

    ElementDef out = t;
    out.dofs.clear();
    for (const auto& d : e.dofs)
        if (d.entity_dim <= 1)
            out.dofs.push_back(d);
    for (const auto& d : t.dofs)
        if (d.entity_dim >= 2)
            out.dofs.push_back(d);
    sort_dofs(out.dofs);
    if (out.dofs.size() != out.shape_basis.size())
        throw std::logic_error("serendipity_reduce: dof count mismatch");
    if (report)
        *report = {e.shape_basis.size(), out.shape_basis.size()};
    return out;
}

bool elements_equivalent(const ElementDef& a, const ElementDef& b)
{
    if (a.dim != b.dim || a.order != b.order)
        return false;
    if (!span_equal(a.shape_basis, b.shape_basis))
        return false;
    if (a.dofs.size() != b.dofs.size())
        return false;
    return dof_actions(a, a.shape_basis) == dof_actions(b, a.shape_basis);
}

CommuteReport check_commute(const ElementDef& base, Family target)
{
    ElementDef p1 = serendipity_reduce(dof_transfer(base), target);
    ElementDef p2 = dof_transfer(serendipity_reduce(base, target));
    CommuteReport rep;
    rep.shape_equal = span_equal(p1.shape_basis, p2.shape_basis);
    rep.dofs_equal = p1.dofs.size() == p2.dofs.size() &&
                     dof_actions(p1, p1.shape_basis) == dof_actions(p2, p1.shape_basis);
    return rep;
}

bool check_bubble_preservation(const ElementDef& reduced, const ElementDef& direct)
{
    auto ba = bubble_space(reduced);
    auto bb = bubble_space(direct);
    if (ba.size() != bb.size())
        return false;
    if (ba.empty())
        return true;
    return span_equal(ba, bb);
}

} // namespace fet
