#include "fqflow/laplacian.hpp"

#include <algorithm>

#include "fqflow/error.hpp"

namespace fqflow {

FqMatrix laplacian(const Field& f, const Multigraph& g, const WeightAssignment& a) {
    if (static_cast<int>(a.size()) != g.num_edges()) {
        throw Error(ErrorCode::InvalidArgument, "weight count does not match edge count");
    }
    FqMatrix lap = zero_matrix(g.num_vertices(), g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e) {
        const int i = g.edge(e).tail, j = g.edge(e).head;
        const FieldElem w = a[static_cast<std::size_t>(e)];
        lap(i, i) = f.add(lap(i, i), w);
        lap(j, j) = f.add(lap(j, j), w);
        lap(i, j) = f.sub(lap(i, j), w);
        lap(j, i) = f.sub(lap(j, i), w);
    }
    return lap;
}

int rank_fq(const Field& f, const FqMatrix& m) { return rank(f, m); }

namespace {

// Subtracts X P^{-1} X^T from the active block, where X holds the pivot columns.
void schur_update_1x1(const Field& f, FqMatrix& m, const std::vector<int>& active, int piv) {
    const FieldElem pinv = f.inv(m(piv, piv));
    for (int a : active) {
        if (m(a, piv).is_zero()) continue;
        const FieldElem fa = f.mul(m(a, piv), pinv);
        for (int b : active) m(a, b) = f.sub(m(a, b), f.mul(fa, m(piv, b)));
    }
}

void schur_update_2x2(const Field& f, FqMatrix& m, const std::vector<int>& active, int i, int j,
                      FieldElem det_block) {
    const FieldElem dinv = f.inv(det_block);
    // P^{-1} = det^{-1} [[m_jj, -m_ij], [-m_ij, m_ii]]
    const FieldElem p00 = f.mul(m(j, j), dinv);
    const FieldElem p01 = f.neg(f.mul(m(i, j), dinv));
    const FieldElem p11 = f.mul(m(i, i), dinv);
    for (int a : active) {
        const FieldElem xa = m(a, i), ya = m(a, j);
        if (xa.is_zero() && ya.is_zero()) continue;
        // row vector [xa ya] P^{-1}
        const FieldElem u = f.add(f.mul(xa, p00), f.mul(ya, p01));
        const FieldElem v = f.add(f.mul(xa, p01), f.mul(ya, p11));
        for (int b : active) {
            const FieldElem t = f.add(f.mul(u, m(i, b)), f.mul(v, m(j, b)));
            m(a, b) = f.sub(m(a, b), t);
        }
    }
}

}  // namespace

RankCertificate max_nonsingular_principal(const Field& f, const FqMatrix& input) {
    FqMatrix m = input;
    const int n = static_cast<int>(m.rows());
    std::vector<int> active(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
    RankCertificate cert;
    FieldElem det = f.one();

    auto drop = [&](int v) { active.erase(std::find(active.begin(), active.end(), v)); };

    while (!active.empty()) {
        const auto diag = std::find_if(active.begin(), active.end(), [&](int v) { return !m(v, v).is_zero(); });
        if (diag != active.end()) {
            const int piv = *diag;
            det = f.mul(det, m(piv, piv));
            drop(piv);
            schur_update_1x1(f, m, active, piv);
            cert.pivot_set.push_back(piv);
            continue;
        }
        int bi = -1, bj = -1;
        for (std::size_t x = 0; x < active.size() && bi < 0; ++x) {
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                if (!m(active[x], active[y]).is_zero()) {
                    bi = active[x];
                    bj = active[y];
                    break;
                }
            }
        }
        if (bi < 0) break;  // remaining Schur complement is zero
        const FieldElem block_det = f.sub(f.mul(m(bi, bi), m(bj, bj)), f.mul(m(bi, bj), m(bi, bj)));
        det = f.mul(det, block_det);
        drop(bi);
        drop(bj);
        schur_update_2x2(f, m, active, bi, bj, block_det);
        cert.pivot_set.push_back(bi);
        cert.pivot_set.push_back(bj);
    }
    std::sort(cert.pivot_set.begin(), cert.pivot_set.end());
    cert.rank = static_cast<int>(cert.pivot_set.size());
    cert.eta_minor = f.eta(det);
    return cert;
}

RankCertificate wstar(const Field& f, const Multigraph& g, const WeightAssignment& a) {
    if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "W* needs a connected graph");
    for (const auto& w : a) {
        if (w.is_zero()) throw Error(ErrorCode::ZeroWeight, "all edge weights must be nonzero");
    }
    auto cert = max_nonsingular_principal(f, laplacian(f, g, a));
    cert.wstar = complement(g, cert.pivot_set);
    return cert;
}

}  // namespace fqflow
