#pragma once

// Streaming rank / discriminant evaluation of weighted Laplacians.
//
// The quadratic form x^T L(G, alpha) x = sum_e alpha_e (x_i(e) - x_f(e))^2 is
// processed edge by edge in a fixed order. Grounding one vertex (x_g = 0)
// leaves a congruent form of the same rank and discriminant. A variable whose
// incident edges are all fixed can be split off by symmetric elimination: a
// 1x1 pivot when its diagonal is nonzero, a 2x2 hyperbolic block with another
// finished variable, or dropped when its row vanishes. Later edges only touch
// unfinished variables, so the elimination state of every edge prefix is
// reused for all completions of that prefix.
//
// The product of pivot-block determinants is the determinant of a maximal
// nonsingular principal minor up to nonzero squares, so its quadratic
// character equals eta_minor of the from-scratch certificate.

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "fqflow/error.hpp"
#include "fqflow/field.hpp"
#include "fqflow/graph.hpp"

namespace fqflow {

/// Full lookup tables for q <= 256; elements are one byte.
class TableArith {
public:
    using Elem = std::uint8_t;
    static constexpr std::uint32_t kMaxOrder = 256;

    explicit TableArith(const Field& f);

    std::uint32_t q() const { return q_; }
    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const { return sub_[a * q_ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const { return sub_[a]; }  // row 0 of the subtraction table
    Elem inv(Elem a) const { return inv_[a]; }
    int eta(Elem a) const { return eta_[a]; }
    static Elem from(FieldElem a) { return static_cast<Elem>(a.value); }

private:
    std::uint32_t q_;
    std::vector<Elem> add_, sub_, mul_, inv_;
    std::vector<std::int8_t> eta_;
};

/// Delegates to Field; used when q is too large for full tables.
class FieldArith {
public:
    using Elem = std::uint32_t;

    explicit FieldArith(const Field& f) : f_(&f) {}

    std::uint32_t q() const { return f_->q(); }
    Elem add(Elem a, Elem b) const { return f_->add(FieldElem{a}, FieldElem{b}).value; }
    Elem sub(Elem a, Elem b) const { return f_->sub(FieldElem{a}, FieldElem{b}).value; }
    Elem mul(Elem a, Elem b) const { return f_->mul(FieldElem{a}, FieldElem{b}).value; }
    Elem neg(Elem a) const { return f_->neg(FieldElem{a}).value; }
    Elem inv(Elem a) const { return f_->inv(FieldElem{a}).value; }
    int eta(Elem a) const { return f_->eta(FieldElem{a}); }
    static Elem from(FieldElem a) { return a.value; }

private:
    const Field* f_;
};

/// Edge order and grounding used by RankStream.
struct StreamPlan {
    static constexpr int kMaxVertices = 64;

    int num_vertices = 0;
    int num_vars = 0;  // num_vertices - 1, the ground vertex is removed
    int ground = 0;
    std::vector<int> edge_order;  // position -> original edge index
    std::vector<int> var_tail;    // per position; -1 for the ground vertex
    std::vector<int> var_head;
    std::vector<std::uint64_t> complete_after;  // depth k -> vars with all edges among the first k

    /// Greedy order: ground the highest-degree vertex, then repeatedly close the
    /// vertex with the fewest unplaced edges, appending those edges.
    static StreamPlan build(const Multigraph& g);
};

struct RankSign {
    int rank = 0;
    int eta = 1;
    friend bool operator==(const RankSign&, const RankSign&) = default;
};

template <typename Arith>
class RankStream {
public:
    using Elem = typename Arith::Elem;

    RankStream(const Arith& arith, const StreamPlan& plan)
        : ar_(arith), plan_(plan), n_(plan.num_vars), levels_(plan.edge_order.size() + 1) {
        for (auto& lv : levels_) lv.m.assign(static_cast<std::size_t>(n_) * n_, Elem{0});
        levels_[0].active = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
        levels_[0].rank = 0;
        levels_[0].eta = 1;
        eliminate(levels_[0], plan_.complete_after[0]);
    }

    std::size_t depth_count() const { return levels_.size() - 1; }

    /// Fix the weight of the edge at position k (0-based) given positions < k.
    void advance(std::size_t k, Elem alpha) {
        const Level& from = levels_[k];
        Level& to = levels_[k + 1];
        std::memcpy(to.m.data(), from.m.data(), to.m.size() * sizeof(Elem));
        to.active = from.active;
        to.rank = from.rank;
        to.eta = from.eta;
        if (alpha != Elem{0}) {
            const int i = plan_.var_tail[k], j = plan_.var_head[k];
            if (i >= 0) at(to, i, i) = ar_.add(at(to, i, i), alpha);
            if (j >= 0) at(to, j, j) = ar_.add(at(to, j, j), alpha);
            if (i >= 0 && j >= 0) {
                at(to, i, j) = ar_.sub(at(to, i, j), alpha);
                at(to, j, i) = ar_.sub(at(to, j, i), alpha);
            }
        }
        eliminate(to, plan_.complete_after[k + 1]);
    }

    /// Result once every edge has been fixed.
    RankSign result() const {
        const Level& last = levels_.back();
        return {last.rank, last.eta};
    }
    RankSign at_depth(std::size_t k) const { return {levels_[k].rank, levels_[k].eta}; }

    /// Appends the residual state at depth k: the active mask and the upper
    /// triangle of the active submatrix. Everything that happens after depth k
    /// depends only on this state, relative to the rank and sign reached so far.
    void state_key(std::size_t k, std::string& out) const {
        const Level& lv = levels_[k];
        out.append(reinterpret_cast<const char*>(&lv.active), sizeof lv.active);
        for (std::uint64_t as = lv.active; as; as &= as - 1) {
            const int a = std::countr_zero(as);
            for (std::uint64_t bs = as; bs; bs &= bs - 1) {
                const Elem e = at(lv, a, std::countr_zero(bs));
                out.append(reinterpret_cast<const char*>(&e), sizeof e);
            }
        }
    }

private:
    struct Level {
        std::vector<Elem> m;
        std::uint64_t active = 0;
        int rank = 0;
        int eta = 1;
    };

    Elem& at(Level& lv, int a, int b) const { return lv.m[static_cast<std::size_t>(a) * n_ + b]; }
    Elem at(const Level& lv, int a, int b) const { return lv.m[static_cast<std::size_t>(a) * n_ + b]; }

    void pivot1(Level& lv, int v) const {
        const Elem d = at(lv, v, v);
        lv.eta *= ar_.eta(d);
        ++lv.rank;
        lv.active &= ~(std::uint64_t{1} << v);
        const Elem dinv = ar_.inv(d);
        const Elem* vrow = &lv.m[static_cast<std::size_t>(v) * n_];
        for (std::uint64_t as = lv.active; as; as &= as - 1) {
            const int a = std::countr_zero(as);
            const Elem xa = at(lv, a, v);
            if (xa == Elem{0}) continue;
            const Elem nf = ar_.neg(ar_.mul(xa, dinv));
            Elem* arow = &lv.m[static_cast<std::size_t>(a) * n_];
            for (std::uint64_t bs = lv.active; bs; bs &= bs - 1) {
                const int b = std::countr_zero(bs);
                if (vrow[b] != Elem{0}) arow[b] = ar_.add(arow[b], ar_.mul(nf, vrow[b]));
            }
        }
    }

    void pivot2(Level& lv, int v, int u) const {
        const Elem b = at(lv, v, u);
        const Elem det = ar_.sub(ar_.mul(at(lv, v, v), at(lv, u, u)), ar_.mul(b, b));
        lv.eta *= ar_.eta(det);
        lv.rank += 2;
        lv.active &= ~((std::uint64_t{1} << v) | (std::uint64_t{1} << u));
        const Elem dinv = ar_.inv(det);
        const Elem p00 = ar_.mul(at(lv, u, u), dinv);
        const Elem p01 = ar_.neg(ar_.mul(b, dinv));
        const Elem p11 = ar_.mul(at(lv, v, v), dinv);
        for (std::uint64_t as = lv.active; as; as &= as - 1) {
            const int a = std::countr_zero(as);
            const Elem xa = at(lv, a, v), ya = at(lv, a, u);
            if (xa == Elem{0} && ya == Elem{0}) continue;
            const Elem cu = ar_.neg(ar_.add(ar_.mul(xa, p00), ar_.mul(ya, p01)));
            const Elem cv = ar_.neg(ar_.add(ar_.mul(xa, p01), ar_.mul(ya, p11)));
            for (std::uint64_t bs = lv.active; bs; bs &= bs - 1) {
                const int c = std::countr_zero(bs);
                const Elem t = ar_.add(ar_.mul(cu, at(lv, v, c)), ar_.mul(cv, at(lv, u, c)));
                at(lv, a, c) = ar_.add(at(lv, a, c), t);
            }
        }
    }

    bool row_vanishes(const Level& lv, int v) const {
        for (std::uint64_t bs = lv.active; bs; bs &= bs - 1) {
            if (at(lv, v, std::countr_zero(bs)) != Elem{0}) return false;
        }
        return true;
    }

    void eliminate(Level& lv, std::uint64_t complete) const {
        while (true) {
            bool progress = false;
            for (std::uint64_t cs = lv.active & complete; cs; cs &= cs - 1) {
                const int v = std::countr_zero(cs);
                if (!(lv.active >> v & 1)) continue;
                if (at(lv, v, v) != Elem{0}) {
                    pivot1(lv, v);
                    progress = true;
                } else if (row_vanishes(lv, v)) {
                    lv.active &= ~(std::uint64_t{1} << v);
                    progress = true;
                }
            }
            if (progress) continue;
            // Every finished variable left has a zero diagonal; pair two of them.
            bool paired = false;
            for (std::uint64_t cs = lv.active & complete; cs && !paired; cs &= cs - 1) {
                const int v = std::countr_zero(cs);
                for (std::uint64_t us = (lv.active & complete) & ~(std::uint64_t{1} << v); us; us &= us - 1) {
                    const int u = std::countr_zero(us);
                    if (at(lv, v, u) != Elem{0}) {
                        pivot2(lv, v, u);
                        paired = true;
                        break;
                    }
                }
            }
            if (!paired) return;
        }
    }

    const Arith& ar_;
    const StreamPlan& plan_;
    int n_;
    std::vector<Level> levels_;
};

/// Rank and eta_minor of L(G, alpha) for one assignment via the streaming route.
RankSign stream_rank_sign(const Field& f, const Multigraph& g, const std::vector<FieldElem>& alpha);

}  // namespace fqflow
