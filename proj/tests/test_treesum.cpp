#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "fqflow/error.hpp"
#include "fqflow/laplacian.hpp"
#include "fqflow/treesum.hpp"

using namespace fqflow;

namespace {

// Every weight vector in F_q^m, last edge varying fastest.
void for_each_weighting(const Field& f, int m, const std::function<void(const WeightAssignment&)>& visit) {
    WeightAssignment a(static_cast<std::size_t>(m), f.zero());
    while (true) {
        visit(a);
        int k = m - 1;
        while (k >= 0 && a[k].value + 1 == f.q()) a[k--] = f.zero();
        if (k < 0) return;
        a[k] = FieldElem{a[k].value + 1};
    }
}

// Kirchhoff count over the integers: any cofactor of the integer Laplacian.
long long kirchhoff_count(const Multigraph& g) {
    const int n = g.num_vertices();
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> lap =
        Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (const auto& e : g.edges()) {
        ++lap(e.tail, e.tail);
        ++lap(e.head, e.head);
        --lap(e.tail, e.head);
        --lap(e.head, e.tail);
    }
    return bareiss_determinant<long long>(lap.bottomRightCorner(n - 1, n - 1));
}

bool is_spanning_tree(const Multigraph& g, const std::vector<int>& edges) {
    if (static_cast<int>(edges.size()) != g.num_vertices() - 1) return false;
    std::vector<int> comp(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) comp[v] = v;
    for (int e : edges) {
        const int a = comp[g.edge(e).tail], b = comp[g.edge(e).head];
        if (a == b) return false;
        for (auto& c : comp)
            if (c == a) c = b;
    }
    return true;
}

}  // namespace

TEST_CASE("spanning tree enumeration") {
    SUBCASE("Cayley counts") {
        long long expected[] = {0, 1, 1, 3, 16, 125};
        for (int n = 1; n <= 5; ++n) {
            CAPTURE(n);
            CHECK(static_cast<long long>(spanning_trees(complete_graph(n)).size()) == expected[n]);
        }
    }

    SUBCASE("trees are valid, distinct and counted by Kirchhoff") {
        for (const char* name : {"k4", "k33", "k34", "petersen", "k5_plus_pendant3", "two_triangles_bridge"}) {
            CAPTURE(name);
            const auto g = named_graph(name);
            const auto trees = spanning_trees(g);
            std::set<std::vector<int>> unique(trees.begin(), trees.end());
            CHECK(unique.size() == trees.size());
            for (const auto& t : trees) REQUIRE(is_spanning_tree(g, t));
            CHECK(static_cast<long long>(trees.size()) == kirchhoff_count(g));
        }
    }

    SUBCASE("parallel edges are distinct") {
        CHECK(spanning_trees(Multigraph(2, {{0, 1}, {0, 1}, {0, 1}})).size() == 3);
    }

    SUBCASE("disconnected graphs are rejected") {
        CHECK_THROWS_AS(spanning_trees(Multigraph(4, {{0, 1}, {2, 3}})), Error);
    }
}

TEST_CASE("tree sum examples") {
    const Field f5 = Field::make(5);
    const auto k3 = named_graph("k3");
    for_each_weighting(f5, 3, [&](const WeightAssignment& a) {
        const auto want = f5.add(f5.add(f5.mul(a[0], a[1]), f5.mul(a[0], a[2])), f5.mul(a[1], a[2]));
        REQUIRE(s_alpha_bruteforce(f5, k3, a) == want);
    });

    CHECK(s_alpha_det(f5, path_graph(2), {FieldElem{3}}) == FieldElem{3});
    CHECK(s_alpha_bruteforce(f5, path_graph(2), {FieldElem{3}}) == FieldElem{3});

    const Field f3 = Field::make(3);
    const WeightAssignment ones(3, f3.one());
    CHECK(s_alpha_det(f3, k3, ones) == f3.zero());
    CHECK(s_alpha_bruteforce(f3, k3, ones) == f3.zero());

    CHECK(s_alpha_bruteforce(f5, Multigraph(1, {}), {}) == f5.one());
    CHECK(s_alpha_det(f5, Multigraph(1, {}), {}) == f5.one());
}

TEST_CASE("determinant tree sum equals enumeration exhaustively") {
    const Multigraph parallel3(2, {{0, 1}, {0, 1}, {0, 1}});
    for (std::uint32_t q : {3u, 5u}) {
        const Field f = Field::make(q);
        for (const auto& g : {named_graph("k3"), named_graph("k4"), parallel3}) {
            for_each_weighting(f, g.num_edges(), [&](const WeightAssignment& a) {
                REQUIRE(s_alpha_det(f, g, a) == s_alpha_bruteforce(f, g, a));
            });
        }
    }
}

TEST_CASE("forest sums") {
    const Field f7 = Field::make(7);
    const auto k3 = named_graph("k3");  // edges 01, 02, 12
    const WeightAssignment a = {FieldElem{2}, FieldElem{3}, FieldElem{5}};

    for (int i = 0; i < 3; ++i) CHECK(forest_sum(f7, k3, a, {i}) == s_alpha_bruteforce(f7, k3, a));
    CHECK(forest_sum(f7, k3, a, {0, 1}) == f7.add(a[1], a[2]));
    CHECK(forest_sum(f7, k3, a, {0, 1, 2}) == f7.one());
    CHECK_THROWS_AS(forest_sum(f7, k3, a, {}), Error);

    SUBCASE("forest sums equal principal minors on random cases") {
        std::mt19937_64 rng(7);
        for (const char* name : {"k4", "k33", "k5_plus_pendant3", "two_triangles_bridge"}) {
            const auto g = named_graph(name);
            const int n = g.num_vertices();
            for (std::uint32_t q : {3u, 5u, 9u}) {
                const Field f = Field::from_order(q);
                std::uniform_int_distribution<std::uint32_t> w(0, q - 1);
                std::uniform_int_distribution<std::uint32_t> mask_pick(1, (1u << n) - 1);
                for (int t = 0; t < 40; ++t) {
                    WeightAssignment b(static_cast<std::size_t>(g.num_edges()));
                    for (auto& x : b) x = FieldElem{w(rng)};
                    const auto mask = mask_pick(rng);
                    VertexSubset roots, rest;
                    for (int v = 0; v < n; ++v) (mask >> v & 1 ? roots : rest).push_back(v);
                    const auto lap = laplacian(f, g, b);
                    const auto minor = rest.empty() ? f.one() : determinant(f, principal_submatrix(lap, rest));
                    REQUIRE(forest_sum(f, g, b, roots) == minor);
                }
            }
        }
    }
}
