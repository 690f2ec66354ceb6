#include <doctest.h>

#include <bit>
#include <random>

#include "fqflow/error.hpp"
#include "fqflow/laplacian.hpp"
#include "fqflow/treesum.hpp"

using namespace fqflow;

namespace {

FqMatrix from_rows(const Field& f, std::initializer_list<std::initializer_list<int>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    FqMatrix m = zero_matrix(n, n);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (int v : row) m(i, j++) = f.from_int(v);
        ++i;
    }
    return m;
}

FqMatrix random_sym(const Field& f, int n, std::mt19937_64& rng, double zero_prob) {
    std::uniform_int_distribution<std::uint32_t> pick(1, f.q() - 1);
    std::bernoulli_distribution zero(zero_prob);
    FqMatrix m = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = zero(rng) ? f.zero() : FieldElem{pick(rng)};
    return m;
}

std::vector<int> members(std::uint32_t mask, int n) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1) idx.push_back(i);
    return idx;
}

WeightAssignment random_units(const Field& f, int m, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(1, f.q() - 1);
    WeightAssignment a(static_cast<std::size_t>(m));
    for (auto& w : a) w = FieldElem{pick(rng)};
    return a;
}

}  // namespace

TEST_CASE("weighted laplacian") {
    const Field f = Field::make(11);
    const FieldElem a{2}, b{3}, c{7};
    const auto lap = laplacian(f, named_graph("k3"), {a, b, c});  // edges 01, 02, 12
    CHECK((lap == from_rows(f, {{2 + 3, -2, -3}, {-2, 2 + 7, -7}, {-3, -7, 3 + 7}})));

    const auto par = laplacian(f, Multigraph(2, {{0, 1}, {1, 0}}), {a, b});
    CHECK((par == from_rows(f, {{5, -5}, {-5, 5}})));

    std::mt19937_64 rng(3);
    for (const auto& name : catalog_names()) {
        const auto g = named_graph(name);
        const auto l = laplacian(f, g, random_units(f, g.num_edges(), rng));
        for (Eigen::Index i = 0; i < l.rows(); ++i) {
            FieldElem row = f.zero();
            for (Eigen::Index j = 0; j < l.cols(); ++j) {
                row = f.add(row, l(i, j));
                CHECK(l(i, j) == l(j, i));
            }
            CHECK(row == f.zero());
        }
        CHECK(rank_fq(f, l) <= g.num_vertices() - 1);
    }
    CHECK_THROWS_AS(laplacian(f, named_graph("k3"), {a}), Error);
}

TEST_CASE("rank over F_q") {
    const Field f3 = Field::make(3), f5 = Field::make(5);
    CHECK(rank_fq(f5, zero_matrix(3, 3)) == 0);
    const auto k3 = named_graph("k3");
    CHECK(rank_fq(f3, laplacian(f3, k3, WeightAssignment(3, f3.one()))) == 1);
    CHECK(rank_fq(f5, laplacian(f5, k3, WeightAssignment(3, f5.one()))) == 2);
}

TEST_CASE("maximal nonsingular principal minor examples") {
    const Field f5 = Field::make(5);
    const auto zero = max_nonsingular_principal(f5, zero_matrix(3, 3));
    CHECK(zero.rank == 0);
    CHECK(zero.pivot_set.empty());
    CHECK(zero.eta_minor == 1);

    const auto k3 = max_nonsingular_principal(f5, laplacian(f5, named_graph("k3"), WeightAssignment(3, f5.one())));
    CHECK(k3.rank == 2);
    CHECK(k3.eta_minor == -1);

    const auto diag = max_nonsingular_principal(f5, from_rows(f5, {{2, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
    CHECK(diag.rank == 1);
    CHECK(diag.pivot_set == VertexSubset{0});
    CHECK(diag.eta_minor == -1);

    // Zero diagonal forces a 2x2 block: det [[0,1],[1,0]] = -1, a square in F_5.
    const auto hyper = max_nonsingular_principal(f5, from_rows(f5, {{0, 1}, {1, 0}}));
    CHECK(hyper.rank == 2);
    CHECK(hyper.eta_minor == 1);
    const Field f7 = Field::make(7);
    CHECK(max_nonsingular_principal(f7, from_rows(f7, {{0, 1}, {1, 0}})).eta_minor == -1);
}

TEST_CASE("certificates are valid and choice independent") {
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {5u, 7u, 9u}) {
        const Field f = Field::from_order(q);
        for (int t = 0; t < 300; ++t) {
            const int n = 1 + t % 6;
            const auto m = random_sym(f, n, rng, t % 3 == 0 ? 0.7 : 0.3);
            const auto cert = max_nonsingular_principal(f, m);
            CAPTURE(q);
            CAPTURE(n);
            REQUIRE(cert.rank == rank_fq(f, m));
            REQUIRE(static_cast<int>(cert.pivot_set.size()) == cert.rank);
            const FieldElem det =
                cert.rank == 0 ? f.one() : determinant(f, principal_submatrix(m, cert.pivot_set));
            REQUIRE_FALSE(det.is_zero());
            REQUIRE(f.eta(det) == cert.eta_minor);

            // Exhaustive oracle: all principal minors of the maximal nonsingular order.
            int best = 0;
            std::vector<int> etas;
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                const auto d = determinant(f, principal_submatrix(m, members(mask, n)));
                if (d.is_zero()) continue;
                const int order = std::popcount(mask);
                if (order > best) {
                    best = order;
                    etas.clear();
                }
                if (order == best) etas.push_back(f.eta(d));
            }
            REQUIRE(best == cert.rank);
            for (int e : etas) REQUIRE(e == cert.eta_minor);
        }
    }
}

TEST_CASE("W* examples") {
    const Field f5 = Field::make(5);
    const auto k3 = named_graph("k3");
    const auto c = wstar(f5, k3, {FieldElem{1}, FieldElem{2}, FieldElem{3}});
    CHECK(c.rank == 2);
    CHECK(c.wstar->size() == 1);
    CHECK(c.eta_minor == f5.eta(s_alpha_bruteforce(f5, k3, {FieldElem{1}, FieldElem{2}, FieldElem{3}})));
    CHECK(c.eta_minor == 1);

    const Multigraph parallel(2, {{0, 1}, {0, 1}});
    const auto cancel = wstar(f5, parallel, {FieldElem{1}, FieldElem{4}});
    CHECK(cancel.rank == 0);
    CHECK(*cancel.wstar == VertexSubset{0, 1});
    CHECK(cancel.eta_minor == 1);

    const Field f3 = Field::make(3);
    CHECK(wstar(f3, k3, WeightAssignment(3, f3.one())).rank == 1);

    CHECK_THROWS_AS(wstar(f5, k3, {FieldElem{1}, FieldElem{0}, FieldElem{3}}), Error);
    CHECK_THROWS_AS(wstar(f5, Multigraph(4, {{0, 1}, {2, 3}}), {FieldElem{1}, FieldElem{1}}), Error);
}

TEST_CASE("W* is a minimum contraction with nonzero tree sum") {
    std::mt19937_64 rng(5);
    const Multigraph parallel3(2, {{0, 1}, {0, 1}, {0, 1}});
    for (const auto& g : {named_graph("k3"), named_graph("k4"), named_graph("k33"), named_graph("k5_plus_pendant3"),
                          named_graph("two_triangles_bridge"), parallel3}) {
        const int n = g.num_vertices();
        for (std::uint32_t q : {3u, 5u, 7u}) {
            const Field f = Field::make(q);
            for (int t = 0; t < 25; ++t) {
                const auto a = random_units(f, g.num_edges(), rng);
                const auto cert = wstar(f, g, a);
                REQUIRE(cert.rank == n - static_cast<int>(cert.wstar->size()));
                const auto& w = *cert.wstar;
                const auto s = s_alpha_bruteforce(f, contract(g, w), restrict_weights(a, contracted_edges(g, w)));
                REQUIRE_FALSE(s.is_zero());
                REQUIRE(f.eta(s) == cert.eta_minor);
                // No smaller nonempty W contracts to a nonzero tree sum.
                for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                    if (std::popcount(mask) >= static_cast<int>(w.size())) continue;
                    const auto sub = members(mask, n);
                    REQUIRE(s_alpha_bruteforce(f, contract(g, sub), restrict_weights(a, contracted_edges(g, sub)))
                                .is_zero());
                }
            }
        }
    }
}

TEST_CASE("integer lifted minors are divisible by powers of p") {
    std::mt19937_64 rng(13);
    for (const auto& g : {named_graph("k3"), named_graph("k4")}) {
        const int n = g.num_vertices();
        for (std::uint32_t p : {3u, 5u}) {
            const Field f = Field::make(p);
            for (int t = 0; t < 200; ++t) {
                const auto a = random_units(f, g.num_edges(), rng);
                Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> lap =
                    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
                for (int e = 0; e < g.num_edges(); ++e) {
                    const long long w = a[e].value;
                    const auto [i, j] = g.edge(e);
                    lap(i, i) += w;
                    lap(j, j) += w;
                    lap(i, j) -= w;
                    lap(j, i) -= w;
                }
                const int r = rank_fq(f, laplacian(f, g, a));
                for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                    const int order = std::popcount(mask);
                    if (order <= r) continue;
                    const auto idx = members(mask, n);
                    const long long det = bareiss_determinant<long long>(lap(idx, idx));
                    long long pw = 1;
                    for (int i = 0; i < order - r; ++i) pw *= p;
                    REQUIRE(det % pw == 0);
                }
            }
        }
    }
}

TEST_CASE("bareiss determinant") {
    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> m(3, 3);
    m << 0, 2, 1, 3, 1, 4, 5, 6, 0;
    // 0(0-24) - 2(0-20) + 1(18-5) = 53
    CHECK(bareiss_determinant<long long>(m) == 53);
    CHECK(bareiss_determinant<long long>(Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>(0, 0)) == 1);
}
