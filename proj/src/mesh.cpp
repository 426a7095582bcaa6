#include "fet/mesh.hpp"

#include "fet/refcell.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace fet {

namespace {

int product(const std::vector<int>& v)
{
    int p = 1;
    for (int x : v)
        p *= x;
    return p;
}

// Lexicographic rank with axis 0 fastest; sizes[j] is the range of idx[j].
int lex_rank(const std::vector<int>& idx, const std::vector<int>& sizes)
{
    int rank = 0, stride = 1;
    for (std::size_t j = 0; j < idx.size(); ++j) {
        rank += idx[j] * stride;
        stride *= sizes[j];
    }
    return rank;
}

std::vector<int> lex_unrank(int rank, const std::vector<int>& sizes)
{
    std::vector<int> idx(sizes.size());
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        idx[j] = rank % sizes[j];
        rank /= sizes[j];
    }
    return idx;
}

} // namespace

int CubicalMesh::num_vertices() const
{
    int p = 1;
    for (int nc : ncells)
        p *= nc + 1;
    return p;
}

int CubicalMesh::num_edges() const
{
    int total = 0;
    for (int a = 0; a < dim; ++a) {
        int p = 1;
        for (int j = 0; j < dim; ++j)
            p *= (j == a) ? ncells[j] : ncells[j] + 1;
        total += p;
    }
    return total;
}

int CubicalMesh::num_faces() const
{
    if (dim != 3)
        return 0;
    int total = 0;
    for (int a = 0; a < 3; ++a) {
        int p = 1;
        for (int j = 0; j < 3; ++j)
            p *= (j == a) ? ncells[j] + 1 : ncells[j];
        total += p;
    }
    return total;
}

int CubicalMesh::num_cells() const { return product(ncells); }

int CubicalMesh::num_entities(int edim) const
{
    if (edim == 0)
        return num_vertices();
    if (edim == 1)
        return num_edges();
    if (edim == dim)
        return num_cells();
    if (edim == 2 && dim == 3)
        return num_faces();
    throw std::out_of_range("num_entities: bad dimension");
}

int CubicalMesh::vertex_id(const std::vector<int>& idx) const
{
    std::vector<int> sizes(dim);
    for (int j = 0; j < dim; ++j)
        sizes[j] = ncells[j] + 1;
    return lex_rank(idx, sizes);
}

int CubicalMesh::edge_id(int axis, const std::vector<int>& idx) const
{
    int offset = 0;
    for (int a = 0; a < axis; ++a) {
        int p = 1;
        for (int j = 0; j < dim; ++j)
            p *= (j == a) ? ncells[j] : ncells[j] + 1;
        offset += p;
    }
    std::vector<int> sizes(dim);
    for (int j = 0; j < dim; ++j)
        sizes[j] = (j == axis) ? ncells[j] : ncells[j] + 1;
    return offset + lex_rank(idx, sizes);
}

int CubicalMesh::face_id(int axis, const std::vector<int>& idx) const
{
    int offset = 0;
    for (int a = 0; a < axis; ++a) {
        int p = 1;
        for (int j = 0; j < 3; ++j)
            p *= (j == a) ? ncells[j] + 1 : ncells[j];
        offset += p;
    }
    std::vector<int> sizes(3);
    for (int j = 0; j < 3; ++j)
        sizes[j] = (j == axis) ? ncells[j] + 1 : ncells[j];
    return offset + lex_rank(idx, sizes);
}

int CubicalMesh::cell_id(const std::vector<int>& idx) const
{
    return lex_rank(idx, ncells);
}

std::vector<int> CubicalMesh::cell_index(int id) const
{
    return lex_unrank(id, ncells);
}

int CubicalMesh::cell_entity(int cell, int edim, int local_id) const
{
    std::vector<int> c = cell_index(cell);
    if (edim == dim)
        return cell;
    if (edim == 0) {
        std::vector<int> idx = c;
        for (int j = 0; j < dim; ++j)
            idx[j] += (local_id >> j) & 1;
        return vertex_id(idx);
    }
    if (edim == 1) {
        RefEntity e = ref_edge(dim, local_id);
        std::vector<int> idx = c;
        int bit = 0;
        for (int j = 0; j < dim; ++j) {
            if (j == e.axis)
                continue;
            // Fixed coordinate +1 on the reference edge means the far side.
            if (e.embed[j].shift > 0)
                idx[j] += 1;
            ++bit;
        }
        return edge_id(e.axis, idx);
    }
    // edim == 2, dim == 3
    RefEntity f = ref_face(3, local_id);
    std::vector<int> idx = c;
    if (f.embed[f.normal_axis].shift > 0)
        idx[f.normal_axis] += 1;
    return face_id(f.normal_axis, idx);
}

bool CubicalMesh::entity_on_boundary(int edim, int id) const
{
    if (edim == dim)
        return false;
    if (edim == 0) {
        std::vector<int> sizes(dim);
        for (int j = 0; j < dim; ++j)
            sizes[j] = ncells[j] + 1;
        std::vector<int> idx = lex_unrank(id, sizes);
        for (int j = 0; j < dim; ++j)
            if (idx[j] == 0 || idx[j] == ncells[j])
                return true;
        return false;
    }
    if (edim == 1) {
        // Locate the axis group.
        for (int a = 0; a < dim; ++a) {
            std::vector<int> sizes(dim);
            int p = 1;
            for (int j = 0; j < dim; ++j) {
                sizes[j] = (j == a) ? ncells[j] : ncells[j] + 1;
                p *= sizes[j];
            }
            if (id < p) {
                std::vector<int> idx = lex_unrank(id, sizes);
                for (int j = 0; j < dim; ++j) {
                    if (j == a)
                        continue;
                    if (idx[j] == 0 || idx[j] == ncells[j])
                        return true;
                }
                return false;
            }
            id -= p;
        }
        throw std::out_of_range("entity_on_boundary: bad edge id");
    }
    // faces, dim == 3
    for (int a = 0; a < 3; ++a) {
        std::vector<int> sizes(3);
        int p = 1;
        for (int j = 0; j < 3; ++j) {
            sizes[j] = (j == a) ? ncells[j] + 1 : ncells[j];
            p *= sizes[j];
        }
        if (id < p) {
            std::vector<int> idx = lex_unrank(id, sizes);
            return idx[a] == 0 || idx[a] == ncells[a];
        }
        id -= p;
    }
    throw std::out_of_range("entity_on_boundary: bad face id");
}

std::vector<Rat> CubicalMesh::cell_halfwidth() const
{
    std::vector<Rat> h(dim);
    for (int j = 0; j < dim; ++j)
        h[j] = (hi[j] - lo[j]) / (2 * ncells[j]);
    return h;
}

std::vector<Rat> CubicalMesh::cell_center(int cell) const
{
    std::vector<int> c = cell_index(cell);
    std::vector<Rat> h = cell_halfwidth();
    std::vector<Rat> x(dim);
    for (int j = 0; j < dim; ++j)
        x[j] = lo[j] + h[j] * (2 * c[j] + 1);
    return x;
}

std::vector<AxisExpr> CubicalMesh::cell_embed(int cell) const
{
    std::vector<Rat> c = cell_center(cell);
    std::vector<Rat> h = cell_halfwidth();
    std::vector<AxisExpr> out(dim);
    for (int j = 0; j < dim; ++j)
        out[j] = AxisExpr{c[j], h[j], j};
    return out;
}

std::vector<AxisExpr> CubicalMesh::cell_pullback(int cell) const
{
    std::vector<Rat> c = cell_center(cell);
    std::vector<Rat> h = cell_halfwidth();
    std::vector<AxisExpr> out(dim);
    for (int j = 0; j < dim; ++j)
        out[j] = AxisExpr{-c[j] / h[j], Rat(1) / h[j], j};
    return out;
}

CubicalMesh build_mesh(int dim, const std::vector<int>& ncells,
                       const std::vector<Rat>& lo, const std::vector<Rat>& hi)
{
    if (dim < 2 || dim > 3 || (int)ncells.size() != dim ||
        (int)lo.size() != dim || (int)hi.size() != dim)
        throw std::invalid_argument("build_mesh: bad dimensions");
    for (int j = 0; j < dim; ++j) {
        if (ncells[j] < 1)
            throw std::invalid_argument("build_mesh: need at least one cell per axis");
        if (!(lo[j] < hi[j]))
            throw std::invalid_argument("build_mesh: degenerate box");
    }
    CubicalMesh m;
    m.dim = dim;
    m.ncells = ncells;
    m.lo = lo;
    m.hi = hi;
    return m;
}

CubicalMesh build_mesh_from_json(const std::string& config)
{
    auto doc = nlohmann::json::parse(config);
    int n = doc.at("n").get<int>();
    std::vector<int> ncells = doc.at("cells_per_axis").get<std::vector<int>>();
    std::vector<Rat> lo, hi;
    for (const auto& pair : doc.at("box")) {
        lo.push_back(Rat(pair.at(0).get<double>()));
        hi.push_back(Rat(pair.at(1).get<double>()));
    }
    return build_mesh(n, ncells, lo, hi);
}

std::vector<JumpPair> jump_pairs(const CubicalMesh& mesh)
{
    std::vector<JumpPair> out;
    const int n = mesh.dim;
    for (int a = 0; a < n; ++a) {
        // Interior facets normal to axis a: i_a in 1..N_a-1.
        std::vector<int> sizes(n);
        for (int j = 0; j < n; ++j)
            sizes[j] = (j == a) ? mesh.ncells[j] + 1 : mesh.ncells[j];
        int count = product(sizes);
        for (int r = 0; r < count; ++r) {
            std::vector<int> idx = lex_unrank(r, sizes);
            if (idx[a] == 0 || idx[a] == mesh.ncells[a])
                continue;
            JumpPair p;
            if (n == 2) {
                // Facets are edges directed along the other axis.
                std::vector<int> eidx = idx;
                p.facet = mesh.edge_id(1 - a, eidx);
            } else {
                p.facet = mesh.face_id(a, idx);
            }
            std::vector<int> cl = idx, cr = idx;
            cl[a] -= 1;
            p.left = mesh.cell_id(cl);
            p.right = mesh.cell_id(cr);
            out.push_back(p);
        }
    }
    return out;
}

} // namespace fet
