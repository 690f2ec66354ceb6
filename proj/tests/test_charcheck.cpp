#include <doctest.h>

#include <cmath>

#include "fqflow/charcheck.hpp"
#include "fqflow/error.hpp"

using namespace fqflow;

namespace {

FqMatrix sym2(const Field& f, int a, int b, int c) {
    FqMatrix m = zero_matrix(2, 2);
    m(0, 0) = f.from_int(a);
    m(0, 1) = m(1, 0) = f.from_int(b);
    m(1, 1) = f.from_int(c);
    return m;
}

bool near(ComplexVal got, ComplexVal want) { return std::abs(got - want) < 1e-6; }

void check_passes(const CheckReport& r) {
    CAPTURE(r.name);
    CAPTURE(r.max_deviation);
    CHECK(r.passed);
    CHECK(r.instances > 0);
}

}  // namespace

TEST_CASE("quadratic form sums") {
    const Field f5 = Field::make(5);
    CHECK(near(quadratic_form_sum(f5, zero_matrix(2, 2)), 25.0));
    CHECK(near(quadratic_form_sum(f5, sym2(f5, 1, 0, 2)), -5.0));
    CHECK(near(quadratic_form_sum(f5, sym2(f5, 0, 1, 0)), 5.0));
    for (const auto& b : {zero_matrix(2, 2), sym2(f5, 1, 0, 2), sym2(f5, 0, 1, 0), sym2(f5, 1, 1, 1)})
        CHECK(near(quadratic_form_formula(f5, b), quadratic_form_sum(f5, b)));

    const Field f3 = Field::make(3);
    // Over F_3, g = i sqrt 3, so diag(1) gives i sqrt 3 and diag(1,1) gives -3.
    FqMatrix one = zero_matrix(1, 1);
    one(0, 0) = f3.one();
    CHECK(near(quadratic_form_sum(f3, one), ComplexVal(0, std::sqrt(3.0))));
    CHECK(near(quadratic_form_sum(f3, sym2(f3, 1, 0, 1)), -3.0));
}

TEST_CASE("random symmetric matrices are reproducible") {
    const Field f7 = Field::make(7);
    for (std::uint64_t seed : {1u, 2u, 99u}) {
        const auto a = random_symmetric(f7, 4, seed);
        CHECK((a == random_symmetric(f7, 4, seed)));
        CHECK((a == a.transpose()));
    }
}

TEST_CASE("individual identities") {
    for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
        const Field f = Field::from_order(q);
        CAPTURE(q);
        check_passes(verify_delta_identity(f));
        check_passes(verify_gauss_onedim(f));
        check_passes(verify_gauss_closed_form(f));
        check_passes(verify_k3_identity(f));
        check_passes(verify_multidim_gauss(2, f, 50));
        check_passes(verify_lemma1(named_graph("k3"), f));
        check_passes(verify_key_lemma(named_graph("k3"), f));
        check_passes(verify_matrix_tree(named_graph("k3"), f));
        check_passes(verify_forest_minors(named_graph("k4"), f, 50));
        check_passes(verify_contracted_minors(named_graph("k4"), f, 50));
        check_passes(verify_eta_choice_independence(f, 5, 100));
    }
    check_passes(verify_key_lemma(named_graph("two_triangles_bridge"), Field::make(3)));
    check_passes(verify_minor_divisibility(named_graph("k4"), Field::make(5), 100));
}

TEST_CASE("exact reports count mismatches") {
    CheckReport r;
    r.compare_exact(true);
    CHECK(r.passed);
    r.compare_exact(false);
    CHECK_FALSE(r.passed);
    CHECK(r.instances == 2);
    CHECK(r.max_deviation == 1.0);

    CheckReport c;
    c.compare(ComplexVal(1, 0), ComplexVal(1, 1e-9));
    CHECK(c.passed);
    c.compare(ComplexVal(1, 0), ComplexVal(1, 1e-3));
    CHECK_FALSE(c.passed);
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(verify_delta_identity(Field::make(53)), Error);
    CHECK_THROWS_AS(verify_lemma1(named_graph("petersen"), Field::make(5)), Error);
    CHECK_THROWS_AS(quadratic_form_sum(Field::make(101), zero_matrix(4, 4)), Error);
}

TEST_CASE("suites") {
    const auto names = suite_names();
    CHECK(names.back() == "all");
    for (std::uint32_t q : {3u, 5u, 25u}) {
        const Field f = Field::from_order(q);
        for (const auto& suite : names) {
            CAPTURE(q);
            CAPTURE(suite);
            const auto reports = run_suite(suite, f);
            if (q <= 5) CHECK_FALSE(reports.empty());  // larger fields skip guarded instances
            for (const auto& r : reports) check_passes(r);
        }
    }
    try {
        run_suite("nope", Field::make(5));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownSuite);
    }
}
