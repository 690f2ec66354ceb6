#include <doctest.h>

#include "fqflow/error.hpp"
#include "fqflow/flowpoly.hpp"

using namespace fqflow;

TEST_CASE("polynomial arithmetic") {
    const auto x1 = IntPolynomial::q_minus_one();
    CHECK(x1.degree() == 1);
    CHECK(x1.evaluate(5) == 4);
    CHECK(q_minus_one_power(0) == IntPolynomial::constant(1));
    const auto cube = q_minus_one_power(3);
    CHECK(cube == x1 * x1 * x1);
    CHECK(cube.coeffs() == std::vector<BigInt>{-1, 3, -3, 1});
    CHECK((x1 - x1).is_zero());
    CHECK((x1 + IntPolynomial::constant(1)).evaluate(7) == 7);
}

TEST_CASE("flow polynomial examples") {
    CHECK(flow_poly(named_graph("k3")) == IntPolynomial::q_minus_one());
    CHECK(flow_poly(Multigraph(2, {{0, 1}})).is_zero());
    CHECK(flow_poly(named_graph("two_triangles_bridge")).is_zero());
    CHECK(flow_poly(Multigraph(1, {})) == IntPolynomial::constant(1));
    // Two parallel edges form a cycle.
    CHECK(flow_poly(Multigraph(2, {{0, 1}, {1, 0}})) == IntPolynomial::q_minus_one());
    // Theta graph: three parallel edges give (q-1)(q-2).
    CHECK(flow_poly(Multigraph(2, {{0, 1}, {0, 1}, {0, 1}})).coeffs() == std::vector<BigInt>{2, -3, 1});

    const auto petersen = flow_poly(named_graph("petersen"));
    CHECK(petersen.evaluate(5) == 240);
    CHECK(petersen.evaluate(4) == 0);  // no nowhere-zero 4-flow
    CHECK(petersen.degree() == 6);     // |E| - |V| + 1
    CHECK(flow_poly(named_graph("k34")).evaluate(5) == 876);
    CHECK(flow_poly(named_graph("k35")).evaluate(5) == 9852);
    CHECK(flow_poly(named_graph("k5_plus_pendant3")).evaluate(5) == 20496);
}

TEST_CASE("direct flow counts") {
    CHECK(flow_count_direct(named_graph("k3"), 3) == 2);
    CHECK(flow_count_direct(named_graph("k4"), 3) == 0);
    CHECK(flow_count_direct(Multigraph(2, {{0, 1}}), 5) == 0);
    CHECK(flow_count_direct(Multigraph(1, {}), 5) == 1);
    CHECK_THROWS_AS(flow_count_direct(named_graph("k3"), 1), Error);
    CHECK_THROWS_AS(flow_count_direct(named_graph("petersen"), 9), Error);
}

TEST_CASE("deletion-contraction agrees with direct counting") {
    for (const auto& name : catalog_names()) {
        const auto g = named_graph(name);
        if (g.num_edges() > 12) continue;
        const auto poly = flow_poly(g);
        CHECK(poly.degree() <= g.num_edges() - g.num_vertices() + 1);
        for (std::uint64_t q : {2u, 3u, 4u, 5u}) {
            CAPTURE(name);
            CAPTURE(q);
            CHECK(poly.evaluate(static_cast<long long>(q)) == flow_count_direct(g, q));
        }
    }
    for (int n = 2; n <= 7; ++n) {
        const auto c = cycle_graph(n);
        CHECK(flow_poly(c) == IntPolynomial::q_minus_one());
    }
}

TEST_CASE("mod-2 flows detect Eulerian graphs") {
    for (const auto& name : catalog_names()) {
        const auto g = named_graph(name);
        if (g.num_edges() > 24) continue;
        bool even = true;
        for (int d : g.degrees()) even = even && d % 2 == 0;
        CAPTURE(name);
        CHECK((flow_poly(g).evaluate(2) == 1) == even);
    }
}

TEST_CASE("deletion-contraction size guard") {
    CHECK_THROWS_AS(flow_poly(complete_graph(8)), Error);
}
