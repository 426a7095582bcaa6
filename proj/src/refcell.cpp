#include "fet/refcell.hpp"

#include <stdexcept>

namespace fet {

int num_ref_vertices(int dim) { return 1 << dim; }

int num_ref_edges(int dim) { return dim * (1 << (dim - 1)); }

int num_ref_faces(int dim) { return dim == 3 ? 6 : 0; }

std::vector<Rat> ref_vertex(int dim, int id)
{
    if (id < 0 || id >= num_ref_vertices(dim))
        throw std::out_of_range("ref_vertex: bad id");
    std::vector<Rat> x(dim);
    for (int i = 0; i < dim; ++i)
        x[i] = (id >> i) & 1 ? 1 : -1;
    return x;
}

RefEntity ref_edge(int dim, int id)
{
    const int per_axis = 1 << (dim - 1);
    if (id < 0 || id >= num_ref_edges(dim))
        throw std::out_of_range("ref_edge: bad id");
    RefEntity e;
    e.edim = 1;
    e.id = id;
    e.axis = id / per_axis;
    int combo = id % per_axis;
    e.frame = {e.axis};
    e.embed.resize(dim);
    int bit = 0;
    for (int i = 0; i < dim; ++i) {
        if (i == e.axis) {
            e.embed[i] = AxisExpr{Rat(0), Rat(1), 0};
        } else {
            e.embed[i] = AxisExpr{Rat((combo >> bit) & 1 ? 1 : -1), Rat(0), -1};
            ++bit;
        }
    }
    return e;
}

RefEntity ref_face(int dim, int id)
{
    if (dim != 3 || id < 0 || id >= 6)
        throw std::out_of_range("ref_face: 3D only, id in 0..5");
    RefEntity f;
    f.edim = 2;
    f.id = id;
    f.normal_axis = id / 2;
    int side = (id % 2) ? 1 : -1;
    static const int frames[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    f.frame = {frames[f.normal_axis][0], frames[f.normal_axis][1]};
    f.embed.resize(3);
    f.embed[f.normal_axis] = AxisExpr{Rat(side), Rat(0), -1};
    f.embed[f.frame[0]] = AxisExpr{Rat(0), Rat(1), 0};
    f.embed[f.frame[1]] = AxisExpr{Rat(0), Rat(1), 1};
    return f;
}

RefEntity ref_cell(int dim)
{
    RefEntity c;
    c.edim = dim;
    c.id = 0;
    c.embed.resize(dim);
    c.frame.resize(dim);
    for (int i = 0; i < dim; ++i) {
        c.embed[i] = AxisExpr{Rat(0), Rat(1), i};
        c.frame[i] = i;
    }
    return c;
}

std::pair<int, int> ref_edge_vertices(int dim, int edge_id)
{
    RefEntity e = ref_edge(dim, edge_id);
    int lo = 0, hi = 0;
    for (int i = 0; i < dim; ++i) {
        int bit_lo, bit_hi;
        if (i == e.axis) {
            bit_lo = 0;
            bit_hi = 1;
        } else {
            bit_lo = bit_hi = (e.embed[i].shift > 0) ? 1 : 0;
        }
        lo |= bit_lo << i;
        hi |= bit_hi << i;
    }
    return {lo, hi};
}

Polynomial trace_on(const RefEntity& ent, const Polynomial& p)
{
    return p.substitute(ent.embed, ent.edim == 0 ? 1 : ent.edim);
}

} // namespace fet
