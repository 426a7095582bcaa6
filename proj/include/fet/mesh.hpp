#pragma once

// Structured axis-aligned cubical meshes with deterministic entity ids.
//
// Id scheme (all lexicographic with axis 0 fastest):
//  - vertices: grid points, i_j in 0..N_j;
//  - edges: grouped by direction axis a, then grid position with
//    i_a in 0..N_a-1 and i_j in 0..N_j for j != a;
//  - faces (3D): grouped by normal axis a, i_a in 0..N_a, others 0..N_j-1;
//  - cells: i_j in 0..N_j-1.
// Orientation is by global axes: every tangent/normal points in the positive
// axis direction, so all local->global DoF signs are +1.

#include "fet/poly.hpp"

namespace fet {

struct CubicalMesh {
    int dim = 2;
    std::vector<int> ncells;  // per axis
    std::vector<Rat> lo, hi;  // domain box

    int num_vertices() const;
    int num_edges() const;
    int num_faces() const;    // 3D; 0 in 2D
    int num_cells() const;
    // Entities of intrinsic dimension edim (0..dim).
    int num_entities(int edim) const;

    int vertex_id(const std::vector<int>& idx) const;
    int edge_id(int axis, const std::vector<int>& idx) const;
    int face_id(int axis, const std::vector<int>& idx) const;
    int cell_id(const std::vector<int>& idx) const;
    std::vector<int> cell_index(int id) const;

    // Global entity backing the reference-cell entity (edim, local_id) of a
    // cell; edim == dim returns the cell itself.
    int cell_entity(int cell, int edim, int local_id) const;

    bool entity_on_boundary(int edim, int id) const;

    // Geometry: cells are congruent axis-aligned boxes.
    std::vector<Rat> cell_halfwidth() const;
    std::vector<Rat> cell_center(int cell) const;
    // Physical coordinate as affine expression of the reference coordinate.
    std::vector<AxisExpr> cell_embed(int cell) const;
    // Reference coordinate as affine expression of the physical coordinate.
    std::vector<AxisExpr> cell_pullback(int cell) const;
};

CubicalMesh build_mesh(int dim, const std::vector<int>& ncells,
                       const std::vector<Rat>& lo, const std::vector<Rat>& hi);
// {"n": 2, "cells_per_axis": [2,2], "box": [[0,1],[0,1]]}
CubicalMesh build_mesh_from_json(const std::string& config);

// Interior codim-1 facets with their two cells; "left" lies on the
// negative-axis side of the facet normal.  Facet ids are edge ids in 2D and
// face ids in 3D.
struct JumpPair {
    int facet = 0;
    int left = 0;
    int right = 0;
};
std::vector<JumpPair> jump_pairs(const CubicalMesh& mesh);

} // namespace fet
