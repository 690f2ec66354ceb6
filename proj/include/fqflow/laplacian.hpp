#pragma once

#include <optional>
#include <vector>

#include "fqflow/field.hpp"
#include "fqflow/graph.hpp"
#include "fqflow/treesum.hpp"

namespace fqflow {

/// Weighted Laplacian: off-diagonal (k, j) is minus the total weight of the
/// edges joining k and j, diagonal (k, k) is the total weight at k.
FqMatrix laplacian(const Field& f, const Multigraph& g, const WeightAssignment& a);

int rank_fq(const Field& f, const FqMatrix& m);

/// Rank of a symmetric matrix together with a principal index set whose
/// submatrix is nonsingular and of that order.
struct RankCertificate {
    int rank = 0;
    VertexSubset pivot_set;
    int eta_minor = 1;  // eta(det of the principal submatrix on pivot_set)
    std::optional<VertexSubset> wstar;  // set for Laplacians: V \ pivot_set
};

/// Symmetric congruence elimination with principal pivots. Takes the lowest
/// index nonzero diagonal entry when one exists, otherwise the lowest 2x2
/// block [[0, a], [a, 0]] with a != 0 (determinant -a^2).
RankCertificate max_nonsingular_principal(const Field& f, const FqMatrix& m);

/// Certificate of L(G, alpha) with wstar = V \ pivot_set.
/// Throws Disconnected or ZeroWeight.
RankCertificate wstar(const Field& f, const Multigraph& g, const WeightAssignment& a);

/// Exact integer determinant (fraction-free Bareiss elimination).
template <typename Scalar>
Scalar bareiss_determinant(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return Scalar(1);
    Scalar sign(1), prev(1);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            Eigen::Index swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return Scalar(0);
            m.row(k).swap(m.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < n; ++j) {
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

}  // namespace fqflow
