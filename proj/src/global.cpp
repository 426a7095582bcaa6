#include "fet/global.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fet {

namespace {

struct LocalDofInfo {
    int entity_dim = 0;
    int local_entity = 0;
    int slot = 0;
};

std::vector<LocalDofInfo> local_dof_layout(const ElementDef& e)
{
    std::map<std::pair<int, int>, int> slots;
    std::vector<LocalDofInfo> out;
    for (const auto& d : e.dofs) {
        int s = slots[{d.entity_dim, d.entity_id}]++;
        out.push_back({d.entity_dim, d.entity_id, s});
    }
    return out;
}

} // namespace

GlobalSpace build_global(const CubicalMesh& mesh, const ElementDef& element)
{
    if (mesh.dim != element.dim)
        throw std::invalid_argument("build_global: dimension mismatch");
    GlobalSpace g;
    g.mesh = mesh;
    g.element = element;
    g.ref_duals = nodal_basis(element).duals;

    const int n = mesh.dim;
    auto layout = local_dof_layout(element);

    // DoF count per global entity (may vary by entity class, e.g. only the
    // x-parallel edges carry DoFs for the component element).
    std::vector<std::map<int, int>> counts(n + 1);
    for (int c = 0; c < mesh.num_cells(); ++c)
        for (const auto& ld : layout) {
            int gid = mesh.cell_entity(c, ld.entity_dim, ld.local_entity);
            auto& slot_count = counts[ld.entity_dim][gid];
            slot_count = std::max(slot_count, ld.slot + 1);
        }

    // Offsets in (entity dim, entity id) order.
    std::vector<std::map<int, int>> offset(n + 1);
    int next = 0;
    for (int ed = 0; ed <= n; ++ed)
        for (const auto& [gid, cnt] : counts[ed]) {
            offset[ed][gid] = next;
            next += cnt;
        }
    g.n_dofs = next;

    g.cell_to_global.assign(mesh.num_cells(), std::vector<int>(layout.size(), -1));
    for (int c = 0; c < mesh.num_cells(); ++c)
        for (std::size_t l = 0; l < layout.size(); ++l) {
            const auto& ld = layout[l];
            int gid = mesh.cell_entity(c, ld.entity_dim, ld.local_entity);
            g.cell_to_global[c][l] = offset[ld.entity_dim][gid] + ld.slot;
        }

    g.boundary_mask.assign(g.n_dofs, false);
    for (int ed = 0; ed < n; ++ed)
        for (const auto& [gid, cnt] : counts[ed])
            if (mesh.entity_on_boundary(ed, gid))
                for (int s = 0; s < cnt; ++s)
                    g.boundary_mask[offset[ed][gid] + s] = true;
    return g;
}

std::vector<FormField> physical_duals(const GlobalSpace& space, int cell)
{
    auto pull = space.mesh.cell_pullback(cell);
    std::vector<FormField> out;
    for (const auto& f : space.ref_duals) {
        FormField p(f.dim, f.order);
        for (std::size_t c = 0; c < f.components.size(); ++c)
            p.components[c] = f.components[c].substitute(pull, f.dim);
        out.push_back(p);
    }
    return out;
}

FormField scaled_differential(const FormField& u, const std::vector<Rat>& inv_h)
{
    FormField out(u.dim, u.order + 1);
    auto d = [&](int comp, int axis) {
        return u.components[comp].derivative(axis) * inv_h[axis];
    };
    if (u.dim == 2) {
        if (u.order == 0) {
            out.components[0] = -d(0, 1);
            out.components[1] = d(0, 0);
        } else {
            out.components[0] = d(0, 0) + d(1, 1);
        }
    } else {
        if (u.order == 0) {
            for (int i = 0; i < 3; ++i)
                out.components[i] = d(0, i);
        } else if (u.order == 1) {
            out.components[0] = d(2, 1) - d(1, 2);
            out.components[1] = d(0, 2) - d(2, 0);
            out.components[2] = d(1, 0) - d(0, 1);
        } else {
            out.components[0] = d(0, 0) + d(1, 1) + d(2, 2);
        }
    }
    return out;
}

std::vector<Rat> interpolate_global(const GlobalSpace& space, const FormField& u)
{
    std::vector<Rat> coeffs(space.n_dofs);
    std::vector<bool> seen(space.n_dofs, false);
    for (int c = 0; c < space.mesh.num_cells(); ++c) {
        auto embed = space.mesh.cell_embed(c);
        FormField local(u.dim, u.order);
        for (std::size_t j = 0; j < u.components.size(); ++j)
            local.components[j] = u.components[j].substitute(embed, u.dim);
        for (std::size_t l = 0; l < space.element.dofs.size(); ++l) {
            Rat v = apply_dof(space.element.dofs[l], local);
            int g = space.cell_to_global[c][l];
            if (seen[g] && coeffs[g] != v)
                throw std::runtime_error("interpolate_global: shared DoF mismatch");
            coeffs[g] = v;
            seen[g] = true;
        }
    }
    return coeffs;
}

DiffMatrix diff_matrix(const GlobalSpace& src, const GlobalSpace& dst)
{
    if (src.mesh.ncells != dst.mesh.ncells || src.mesh.lo != dst.mesh.lo ||
        src.mesh.hi != dst.mesh.hi)
        throw std::invalid_argument("diff_matrix: meshes differ");
    const int n = src.mesh.dim;
    auto h = src.mesh.cell_halfwidth();
    std::vector<Rat> inv_h(n);
    for (int i = 0; i < n; ++i)
        inv_h[i] = Rat(1) / h[i];

    // Cells are congruent, so the local matrix is cell-independent.
    std::vector<FormField> dmapped;
    for (std::size_t j = 0; j < src.ref_duals.size(); ++j) {
        FormField v = scaled_differential(src.ref_duals[j], inv_h);
        if (!span_contains(dst.element.shape_basis, {v}))
            throw std::runtime_error(
                "diff_matrix: image of basis function " + std::to_string(j) +
                " not contained in the target shape space");
        dmapped.push_back(v);
    }
    QMat local(dst.element.dofs.size(), src.ref_duals.size());
    for (std::size_t i = 0; i < dst.element.dofs.size(); ++i)
        for (std::size_t j = 0; j < dmapped.size(); ++j)
            local(i, j) = apply_dof(dst.element.dofs[i], dmapped[j]);

    DiffMatrix m;
    m.rows = dst.n_dofs;
    m.cols = src.n_dofs;
    m.row_data.resize(m.rows);
    for (int c = 0; c < src.mesh.num_cells(); ++c)
        for (std::size_t i = 0; i < dst.element.dofs.size(); ++i) {
            int gi = dst.cell_to_global[c][i];
            for (std::size_t j = 0; j < dmapped.size(); ++j) {
                int gj = src.cell_to_global[c][j];
                const Rat& v = local(i, j);
                auto it = m.row_data[gi].find(gj);
                if (it == m.row_data[gi].end()) {
                    if (v != 0)
                        m.row_data[gi][gj] = v;
                } else if (it->second != v) {
                    throw std::runtime_error("diff_matrix: shared DoF value conflict");
                }
            }
        }
    return m;
}

std::size_t sparse_rank(DiffMatrix m)
{
    // Gaussian elimination with min-fill-ish pivoting: repeatedly take the
    // sparsest remaining row and clear its leading column everywhere.
    const int rows = m.rows;
    std::vector<bool> done(rows, false);
    std::vector<std::set<int>> col_rows; // column -> rows with a nonzero
    col_rows.resize(m.cols);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : m.row_data[i])
            col_rows[j].insert(i);

    std::size_t rank = 0;
    while (true) {
        int pivot_row = -1;
        std::size_t best = 0;
        for (int i = 0; i < rows; ++i) {
            if (done[i] || m.row_data[i].empty())
                continue;
            if (pivot_row < 0 || m.row_data[i].size() < best) {
                pivot_row = i;
                best = m.row_data[i].size();
            }
        }
        if (pivot_row < 0)
            break;
        // Pivot on the entry whose column is sparsest.
        int pivot_col = -1;
        std::size_t cbest = 0;
        for (const auto& [j, v] : m.row_data[pivot_row])
            if (pivot_col < 0 || col_rows[j].size() < cbest) {
                pivot_col = j;
                cbest = col_rows[j].size();
            }
        ++rank;
        done[pivot_row] = true;
        Rat p = m.row_data[pivot_row][pivot_col];
        auto targets = col_rows[pivot_col]; // copy: we mutate while iterating
        for (int i : targets) {
            if (i == pivot_row)
                continue;
            Rat factor = m.row_data[i][pivot_col] / p;
            for (const auto& [j, v] : m.row_data[pivot_row]) {
                auto it = m.row_data[i].find(j);
                Rat nv = (it == m.row_data[i].end() ? Rat(0) : it->second) - factor * v;
                if (nv == 0) {
                    if (it != m.row_data[i].end()) {
                        m.row_data[i].erase(it);
                        col_rows[j].erase(i);
                    }
                } else {
                    if (it == m.row_data[i].end())
                        col_rows[j].insert(i);
                    m.row_data[i][j] = nv;
                }
            }
        }
        for (const auto& [j, v] : m.row_data[pivot_row])
            col_rows[j].erase(pivot_row);
        m.row_data[pivot_row].clear();
    }
    return rank;
}

bool composes_to_zero(const DiffMatrix& second, const DiffMatrix& first)
{
    if (second.cols != first.rows)
        throw std::invalid_argument("composes_to_zero: shape mismatch");
    for (int i = 0; i < second.rows; ++i) {
        std::map<int, Rat> acc;
        for (const auto& [k, a] : second.row_data[i])
            for (const auto& [j, b] : first.row_data[k])
                acc[j] += a * b;
        for (const auto& [j, v] : acc)
            if (v != 0)
                return false;
    }
    return true;
}

CohomologyReport cohomology(const std::vector<const GlobalSpace*>& complex)
{
    CohomologyReport rep;
    for (const auto* s : complex)
        rep.dims.push_back(s->n_dofs);
    std::vector<DiffMatrix> ds;
    for (std::size_t k = 0; k + 1 < complex.size(); ++k)
        ds.push_back(diff_matrix(*complex[k], *complex[k + 1]));
    for (std::size_t k = 0; k + 1 < ds.size(); ++k)
        if (!composes_to_zero(ds[k + 1], ds[k]))
            rep.dd_zero = false;
    for (auto& d : ds)
        rep.ranks.push_back(sparse_rank(d));
    for (std::size_t k = 0; k < complex.size(); ++k) {
        std::size_t kernel = k < ds.size() ? rep.dims[k] - rep.ranks[k]
                                           : (std::size_t)rep.dims[k];
        // Unreduced cohomology: nothing maps into the 0-forms, so a
        // connected mesh reports b0 = 1 (the constants).
        std::size_t image = k == 0 ? 0 : rep.ranks[k - 1];
        rep.betti.push_back((int)(kernel - image));
    }
    return rep;
}

} // namespace fet
