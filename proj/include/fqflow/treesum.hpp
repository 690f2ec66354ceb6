#pragma once

#include <functional>
#include <vector>

#include "fqflow/field.hpp"
#include "fqflow/graph.hpp"

namespace fqflow {

/// One weight per edge, aligned with the graph's edge order.
using WeightAssignment = std::vector<FieldElem>;

WeightAssignment restrict_weights(const WeightAssignment& a, const std::vector<int>& edge_indices);

/// Calls visit(edge_indices) once per spanning tree. Parallel edges are distinct.
/// Throws Disconnected.
void for_each_spanning_tree(const Multigraph& g, const std::function<void(const std::vector<int>&)>& visit);
std::vector<std::vector<int>> spanning_trees(const Multigraph& g);

/// Tree sum by explicit enumeration of spanning trees; 1 for a single vertex.
FieldElem s_alpha_bruteforce(const Field& f, const Multigraph& g, const WeightAssignment& a);

/// Tree sum as the determinant of L(G, alpha) with row and column 0 removed.
FieldElem s_alpha_det(const Field& f, const Multigraph& g, const WeightAssignment& a);

/// Sum over spanning forests with |roots| trees, one root per tree, of the
/// product of edge weights. Capped at |E| <= 20. Throws EmptyRoots, TooLarge.
FieldElem forest_sum(const Field& f, const Multigraph& g, const WeightAssignment& a, const VertexSubset& roots);

}  // namespace fqflow
