#include <doctest.h>

#include <bit>
#include <functional>

#include "fqflow/error.hpp"
#include "fqflow/flowpoly.hpp"
#include "fqflow/laplacian.hpp"
#include "fqflow/stable.hpp"
#include "fqflow/treesum.hpp"

using namespace fqflow;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

// Independent per-assignment oracle: for every unit weighting, scan all
// principal minors of the Laplacian, take the largest nonsingular order and
// the eta of any minor of that order.
std::vector<BigInt> scratch_s_values(const Multigraph& g, const Field& f) {
    const int n = g.num_vertices(), m = g.num_edges();
    std::vector<BigInt> s(static_cast<std::size_t>(n), 0);
    WeightAssignment a(static_cast<std::size_t>(m), f.one());
    const auto units = f.units();
    std::vector<std::size_t> digit(static_cast<std::size_t>(m), 0);
    while (true) {
        for (int e = 0; e < m; ++e) a[e] = units[digit[e]];
        const auto lap = laplacian(f, g, a);
        int best = 0, eta = 1;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            const int order = std::popcount(mask);
            if (order <= best) continue;
            VertexSubset idx;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1) idx.push_back(v);
            const auto d = determinant(f, principal_submatrix(lap, idx));
            if (!d.is_zero()) {
                best = order;
                eta = f.eta(d);
            }
        }
        s[static_cast<std::size_t>(best)] += eta;
        int k = m - 1;
        while (k >= 0 && ++digit[k] == units.size()) digit[k--] = 0;
        if (k < 0) break;
    }
    return s;
}

EnumerationOptions full(unsigned threads = 1) {
    EnumerationOptions o;
    o.scaling_reduction = false;
    o.threads = threads;
    return o;
}

}  // namespace

TEST_CASE("S-table examples") {
    const Field f5 = Field::make(5);
    const auto t = s_table(named_graph("k3"), f5, full());
    CHECK(t.s_values == std::vector<BigInt>{0, 0, 20});
    CHECK(t.flow_value == 4);
    CHECK(t.assignments_enumerated == 64);
    CHECK_FALSE(t.reduced);

    const auto r = s_table(named_graph("k3"), f5);
    CHECK(r.reduced);
    CHECK(r.assignments_enumerated == 16);
    CHECK(r.s_values == t.s_values);

    const auto edge = s_table(Multigraph(2, {{0, 1}}), f5, full());
    CHECK(edge.s_values == std::vector<BigInt>{0, 0});
    CHECK(edge.flow_value == 0);
}

TEST_CASE("engine matches the per-assignment oracle") {
    const Multigraph parallel3(2, {{0, 1}, {0, 1}, {0, 1}});
    const Multigraph parallel4(2, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
    struct Case {
        Multigraph g;
        std::uint32_t q;
    };
    const std::vector<Case> cases = {
        {named_graph("k3"), 3},  {named_graph("k3"), 5},  {named_graph("k3"), 7},  {named_graph("k3"), 9},
        {named_graph("k4"), 3},  {named_graph("k4"), 5},  {parallel3, 5},          {parallel4, 7},
        {named_graph("two_triangles_bridge"), 3},         {cycle_graph(5), 5},
    };
    for (const auto& c : cases) {
        const Field f = Field::from_order(c.q);
        CAPTURE(c.q);
        CAPTURE(c.g.num_edges());
        const auto want = scratch_s_values(c.g, f);
        const auto t = s_table(c.g, f, full());
        CHECK(t.s_values == want);
        // Odd ranks vanish on full runs.
        for (std::size_t r = 1; r < t.s_values.size(); r += 2) CHECK(t.s_values[r] == 0);
        CHECK(t.flow_value == flow_poly(c.g).evaluate(c.q));
        CHECK(s_table(c.g, f).s_values == want);
    }
}

TEST_CASE("reduced and full runs agree with the flow polynomial") {
    for (const char* name : {"k3", "k4", "k33", "two_triangles_bridge"}) {
        const auto g = named_graph(name);
        const auto poly = flow_poly(g);
        for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
            const Field f = Field::from_order(q);
            CAPTURE(name);
            CAPTURE(q);
            const auto reduced = s_table(g, f);
            CHECK(reduced.flow_value == poly.evaluate(q));
            if (g.num_edges() <= 7 || q <= 5) {
                const auto whole = s_table(g, f, full());
                CHECK(whole.s_values == reduced.s_values);
                for (std::size_t r = 1; r < whole.s_values.size(); r += 2) CHECK(whole.s_values[r] == 0);
            }
        }
    }
}

TEST_CASE("K3 eta sum identity") {
    for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) {
        const Field f = Field::from_order(q);
        CAPTURE(q);
        const auto hist = enumerate_ranks(named_graph("k3"), f, WeightRange::Units, false, 1);
        std::int64_t total = 0;
        for (auto s : hist.eta_sum) total += s;
        CHECK(total == f.eta_minus_one() * static_cast<std::int64_t>(q) * (q - 1));
    }
}

TEST_CASE("memoization and threading do not change results") {
    const Field f5 = Field::make(5), f7 = Field::make(7);
    for (const char* name : {"k4", "k33", "k34", "k5"}) {
        const auto g = named_graph(name);
        const Field& f = g.num_edges() <= 9 ? f7 : f5;
        CAPTURE(name);
        const auto base = enumerate_ranks(g, f, WeightRange::Units, true, 1, false);
        for (unsigned threads : {1u, 3u, 8u}) {
            for (bool memo : {false, true}) {
                const auto h = enumerate_ranks(g, f, WeightRange::Units, true, threads, memo);
                CHECK(h.eta_sum == base.eta_sum);
                CHECK(h.count == base.count);
                CHECK(h.assignments == base.assignments);
            }
        }
    }
}

TEST_CASE("n_count") {
    const Field f3 = Field::make(3), f5 = Field::make(5);
    CHECK(n_count(Multigraph(2, {{0, 1}}), f5) == 4);
    CHECK(n_count(named_graph("k3"), f3) == 18);
    CHECK(n_count(named_graph("k3"), f5) == 100);
    // Brute force over all weightings, zero included.
    for (const auto& g : {named_graph("k4"), Multigraph(2, {{0, 1}, {0, 1}, {0, 1}})}) {
        const int m = g.num_edges();
        std::uint64_t want = 0;
        std::vector<std::uint32_t> digit(static_cast<std::size_t>(m), 0);
        while (true) {
            WeightAssignment a;
            for (auto d : digit) a.push_back(FieldElem{d});
            want += !s_alpha_bruteforce(f3, g, a).is_zero();
            int k = m - 1;
            while (k >= 0 && ++digit[k] == 3) digit[k--] = 0;
            if (k < 0) break;
        }
        CHECK(n_count(g, f3) == want);
    }
}

TEST_CASE("rank profile") {
    const Field f5 = Field::make(5);
    const auto k3 = rank_profile(named_graph("k3"), f5);
    CHECK(k3.size() == 3);
    CHECK(k3[0] == 0);
    CHECK(k3[0] + k3[1] + k3[2] == 64);
    // Two parallel edges cancel exactly when the weights sum to zero.
    const auto par = rank_profile(Multigraph(2, {{0, 1}, {0, 1}}), f5);
    CHECK(par == std::vector<BigInt>{4, 12});
}

TEST_CASE("errors") {
    const Field f5 = Field::make(5);
    CHECK(code_of([&] { s_table(Multigraph(4, {{0, 1}, {2, 3}}), f5); }) == ErrorCode::Disconnected);
    CHECK(code_of([&] { s_table(complete_graph(8), f5); }) == ErrorCode::SearchSpaceTooLarge);
    CHECK(code_of([&] { n_count(named_graph("petersen"), f5); }) == ErrorCode::SearchSpaceTooLarge);

    STable bad;
    bad.q = 5;
    bad.s_values = {0, 3, 20};
    CHECK(code_of([&] { flow_from_stable(bad, f5); }) == ErrorCode::OddRankResidue);
    bad.s_values = {0, 0, 7};
    CHECK(code_of([&] { flow_from_stable(bad, f5); }) == ErrorCode::NonIntegerResult);
    bad.q = 7;
    CHECK(code_of([&] { flow_from_stable(bad, f5); }) == ErrorCode::InvalidArgument);
}
