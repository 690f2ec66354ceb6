#include "fqflow/rank_stream.hpp"

#include <algorithm>

namespace fqflow {

TableArith::TableArith(const Field& f) : q_(f.q()) {
    if (q_ > kMaxOrder) throw Error(ErrorCode::InvalidArgument, "lookup tables need q <= 256");
    add_.resize(q_ * q_);
    sub_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    inv_.assign(q_, 0);
    eta_.assign(q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a) {
        for (std::uint32_t b = 0; b < q_; ++b) {
            add_[a * q_ + b] = static_cast<Elem>(f.add(FieldElem{a}, FieldElem{b}).value);
            sub_[a * q_ + b] = static_cast<Elem>(f.sub(FieldElem{a}, FieldElem{b}).value);
            mul_[a * q_ + b] = static_cast<Elem>(f.mul(FieldElem{a}, FieldElem{b}).value);
        }
        if (a != 0) inv_[a] = static_cast<Elem>(f.inv(FieldElem{a}).value);
        eta_[a] = static_cast<std::int8_t>(f.eta(FieldElem{a}));
    }
}

StreamPlan StreamPlan::build(const Multigraph& g) {
    const int n = g.num_vertices();
    if (n > kMaxVertices) throw Error(ErrorCode::TooLarge, "streaming elimination supports at most 64 vertices");
    StreamPlan plan;
    plan.num_vertices = n;
    plan.num_vars = std::max(n - 1, 0);

    const auto deg = g.degrees();
    plan.ground = 0;
    for (int v = 1; v < n; ++v)
        if (deg[v] > deg[plan.ground]) plan.ground = v;

    std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
    for (int e = 0; e < g.num_edges(); ++e) {
        incident[g.edge(e).tail].push_back(e);
        incident[g.edge(e).head].push_back(e);
    }
    std::vector<int> unplaced = deg;
    std::vector<char> placed(static_cast<std::size_t>(g.num_edges()), 0), closed(static_cast<std::size_t>(n), 0);
    closed[plan.ground] = 1;
    for (int step = 0; step + 1 < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (closed[v]) continue;
            if (best < 0 || unplaced[v] < unplaced[best]) best = v;
        }
        closed[best] = 1;
        for (int e : incident[best]) {
            if (placed[e]) continue;
            placed[e] = 1;
            plan.edge_order.push_back(e);
            --unplaced[g.edge(e).tail];
            --unplaced[g.edge(e).head];
        }
    }

    std::vector<int> var(static_cast<std::size_t>(n), -1);
    for (int v = 0, next = 0; v < n; ++v)
        if (v != plan.ground) var[v] = next++;

    const int m = static_cast<int>(plan.edge_order.size());
    std::vector<int> last(static_cast<std::size_t>(plan.num_vars), -1);
    for (int k = 0; k < m; ++k) {
        const auto& e = g.edge(plan.edge_order[k]);
        plan.var_tail.push_back(var[e.tail]);
        plan.var_head.push_back(var[e.head]);
        if (var[e.tail] >= 0) last[var[e.tail]] = k;
        if (var[e.head] >= 0) last[var[e.head]] = k;
    }
    plan.complete_after.assign(static_cast<std::size_t>(m) + 1, 0);
    for (int k = 0; k <= m; ++k) {
        for (int x = 0; x < plan.num_vars; ++x)
            if (last[x] < k) plan.complete_after[k] |= std::uint64_t{1} << x;
    }
    return plan;
}

RankSign stream_rank_sign(const Field& f, const Multigraph& g, const std::vector<FieldElem>& alpha) {
    const auto plan = StreamPlan::build(g);
    auto run = [&](const auto& arith) {
        RankStream stream(arith, plan);
        for (std::size_t k = 0; k < plan.edge_order.size(); ++k) {
            stream.advance(k, arith.from(alpha[static_cast<std::size_t>(plan.edge_order[k])]));
        }
        return stream.result();
    };
    if (f.q() <= TableArith::kMaxOrder) return run(TableArith(f));
    return run(FieldArith(f));
}

}  // namespace fqflow
