#pragma once

// Entity enumeration on the reference cell [-1,1]^n with deterministic ids
// and fixed intrinsic frames:
//  - vertices: id bits give coordinates (bit i set -> x_i = +1);
//  - edges: grouped by axis, then lex over the fixed coordinates
//    (bit 0 of the combination index is the lowest non-axis coordinate);
//  - faces (3D): id = 2*normal_axis + side, frame right-handed with the
//    positive normal: x->(y,z), y->(z,x), z->(x,y).

#include "fet/poly.hpp"

namespace fet {

struct RefEntity {
    int edim = 0;                // intrinsic dimension
    int id = 0;
    std::vector<AxisExpr> embed; // ambient coordinate in terms of entity params
    int axis = -1;               // edge direction axis (edges only)
    int normal_axis = -1;        // faces only
    std::vector<int> frame;      // param axis -> ambient axis (edges/faces)
};

int num_ref_vertices(int dim);
int num_ref_edges(int dim);
int num_ref_faces(int dim); // 3D: 6; 2D: 0 (codim-1 facets in 2D are the edges)

std::vector<Rat> ref_vertex(int dim, int id);
RefEntity ref_edge(int dim, int id);
RefEntity ref_face(int dim, int id); // 3D only
RefEntity ref_cell(int dim);         // identity embedding

// Vertex ids of the two endpoints of an edge (params t=-1 and t=+1).
std::pair<int, int> ref_edge_vertices(int dim, int edge_id);

// Trace of a scalar polynomial on an entity: substitute the embedding,
// result lives in the entity's intrinsic coordinates.
Polynomial trace_on(const RefEntity& ent, const Polynomial& p);

} // namespace fet
