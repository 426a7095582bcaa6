#pragma once

// Element transforms: the vertex-transfer operation (trade the two
// highest-degree moments of every edge for vertex data) and the serendipity
// reduction (shrink the shape space to the serendipity / trimmed-serendipity
// span, keeping vertex and edge functionals).  Both are checked exactly.

#include "fet/element.hpp"

namespace fet {

struct TransferReport {
    int removed_edge_dofs = 0;
    int added_vertex_dofs = 0;
};

// Applicable for k in {0,1}; requires >= 2 moments per edge.  The shape space
// is unchanged; on every edge the two highest-degree Legendre moments are
// replaced by vertex derivatives (k=0, one per axis) or vertex component
// evaluations (k=1), deduplicated across edges.
ElementDef dof_transfer(const ElementDef& e, TransferReport* report = nullptr);
bool transfer_applicable(const ElementDef& e);

struct ReduceReport {
    std::size_t old_dim = 0;
    std::size_t new_dim = 0;
};

// Serendipity reduction of a tensor-family (or transferred tensor-family)
// element towards `target` in {S, Sminus}.  The target shape must be contained
// in the source shape and the target face/interior weight spans must be
// contained in the source's; both are verified exactly.
ElementDef serendipity_reduce(const ElementDef& e, Family target,
                              ReduceReport* report = nullptr);

// Exact element comparison: identical shape span and identical multiset of
// DoF functionals (compared via their action on a common spanning set).
bool elements_equivalent(const ElementDef& a, const ElementDef& b);

struct CommuteReport {
    bool shape_equal = false;
    bool dofs_equal = false;
    bool ok() const { return shape_equal && dofs_equal; }
};

// Do transfer and reduction commute on the given tensor-family element?
CommuteReport check_commute(const ElementDef& base, Family target);

// Does the reduction preserve the bubble space of the *target* element, i.e.
// are the reduced element's bubbles exactly those of the directly built one?
bool check_bubble_preservation(const ElementDef& reduced, const ElementDef& direct);

} // namespace fet
