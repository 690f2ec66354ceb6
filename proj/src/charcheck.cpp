#include "fqflow/charcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <boost/multiprecision/eigen.hpp>

#include "fqflow/bigint.hpp"
#include "fqflow/error.hpp"
#include "fqflow/flowpoly.hpp"
#include "fqflow/laplacian.hpp"
#include "fqflow/treesum.hpp"

namespace fqflow {

void CheckReport::compare(ComplexVal got, ComplexVal want) {
    const double dev = std::abs(got - want);
    ++instances;
    max_deviation = std::max(max_deviation, dev);
    if (!(dev <= tolerance)) passed = false;
}

void CheckReport::compare_exact(bool equal) {
    ++instances;
    if (!equal) {
        max_deviation += 1.0;
        passed = false;
    }
}

namespace {

CheckReport exact_report(std::string name) {
    CheckReport r;
    r.name = std::move(name);
    r.tolerance = 0.0;
    return r;
}

void require_small_field(const Field& f, std::uint32_t max_q) {
    if (f.q() > max_q) {
        throw Error(ErrorCode::FieldTooLarge, "q = " + std::to_string(f.q()) + " exceeds " + std::to_string(max_q));
    }
}

void require_budget(std::uint64_t work, std::uint64_t cap, const char* what) {
    if (work > cap) throw Error(ErrorCode::TooLarge, std::string(what) + " exceeds " + std::to_string(cap) + " terms");
}

// Calls visit(t) for every t in values^len, last position varying fastest.
void for_each_tuple(std::size_t len, const std::vector<FieldElem>& values,
                    const std::function<void(const std::vector<FieldElem>&)>& visit) {
    std::vector<std::size_t> idx(len, 0);
    std::vector<FieldElem> t(len, values.empty() ? FieldElem{} : values[0]);
    if (len > 0 && values.empty()) return;
    while (true) {
        visit(t);
        std::size_t k = len;
        while (k > 0) {
            --k;
            if (++idx[k] < values.size()) {
                t[k] = values[idx[k]];
                break;
            }
            idx[k] = 0;
            t[k] = values[0];
            if (k == 0) return;
        }
        if (len == 0) return;
    }
}

std::vector<ComplexVal> chi_table(const Field& f) {
    std::vector<ComplexVal> chi(f.q());
    for (auto x : f.elements()) chi[x.value] = f.chi1(x);
    return chi;
}

// Determinants of all principal submatrices, indexed by subset bitmask.
std::vector<FieldElem> principal_minors(const Field& f, const FqMatrix& m) {
    const int n = static_cast<int>(m.rows());
    std::vector<FieldElem> out(std::size_t{1} << n);
    for (std::uint32_t mask = 0; mask < out.size(); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) idx.push_back(i);
        out[mask] = idx.empty() ? f.one() : determinant(f, principal_submatrix(m, idx));
    }
    return out;
}

WeightAssignment random_weights(const Field& f, int m, bool allow_zero, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(allow_zero ? 0 : 1, f.q() - 1);
    WeightAssignment a(static_cast<std::size_t>(m));
    for (auto& w : a) w = FieldElem{pick(rng)};
    return a;
}

}  // namespace

CheckReport verify_delta_identity(const Field& f) {
    require_small_field(f, 49);
    CheckReport r;
    r.name = "delta identity q=" + std::to_string(f.q());
    const auto chi = chi_table(f);
    for (auto t : f.elements()) {
        ComplexVal sum = 0.0;
        for (auto k : f.elements()) sum += chi[f.mul(k, t).value];
        r.compare(sum, static_cast<double>(f.q()) * Field::delta(t));
    }
    return r;
}

CheckReport verify_gauss_onedim(const Field& f) {
    require_small_field(f, 49);
    CheckReport r;
    r.name = "one-dimensional gauss sum q=" + std::to_string(f.q());
    const auto chi = chi_table(f);
    const ComplexVal g = gauss_formula(f);
    for (auto t : f.elements()) {
        ComplexVal sum = 0.0;
        for (auto k : f.elements()) sum += chi[f.mul(f.mul(k, k), t).value];
        const ComplexVal want = t.is_zero() ? ComplexVal(f.q()) : static_cast<double>(f.eta(t)) * g;
        r.compare(sum, want);
    }
    return r;
}

CheckReport verify_gauss_closed_form(const Field& f) {
    CheckReport r;
    r.name = "gauss sum closed form q=" + std::to_string(f.q());
    r.compare(gauss_direct(f), gauss_formula(f));
    return r;
}

CheckReport verify_lemma1(const Multigraph& g, const Field& f) {
    const int n = g.num_vertices(), m = g.num_edges();
    require_budget(saturating_pow(f.q(), static_cast<unsigned>(n + m)), 100'000'000ULL, "q^(|V|+|E|)");
    CheckReport r;
    r.name = "character product lemma q=" + std::to_string(f.q());
    const auto chi = chi_table(f);
    const auto elems = f.elements();
    const IncidenceMatrix eps = incidence(g);
    for_each_tuple(static_cast<std::size_t>(m), elems, [&](const std::vector<FieldElem>& k) {
        ComplexVal lhs = 0.0;
        for_each_tuple(static_cast<std::size_t>(n), elems, [&](const std::vector<FieldElem>& x) {
            ComplexVal term = 1.0;
            for (int e = 0; e < m; ++e) {
                const auto& ed = g.edge(e);
                term *= chi[f.mul(f.sub(x[ed.tail], x[ed.head]), k[e]).value];
            }
            lhs += term;
        });
        double rhs = std::pow(static_cast<double>(f.q()), n);
        for (int v = 0; v < n; ++v) {
            FieldElem net = f.zero();
            for (int e = 0; e < m; ++e) net = f.add(net, f.mul(f.from_int(eps(v, e)), k[e]));
            rhs *= Field::delta(net);
        }
        r.compare(lhs, rhs);
    });
    return r;
}

CheckReport verify_key_lemma(const Multigraph& g, const Field& f) {
    const int n = g.num_vertices(), m = g.num_edges();
    require_budget(saturating_pow(f.q() - 1, static_cast<unsigned>(m)) * saturating_pow(f.q(), static_cast<unsigned>(n)),
                   100'000'000ULL, "(q-1)^|E| q^|V|");
    CheckReport r;
    r.name = "key lemma q=" + std::to_string(f.q());
    const auto chi = chi_table(f);
    const auto units = f.units();
    ComplexVal total = 0.0;
    std::vector<FieldElem> sq(static_cast<std::size_t>(m));
    for_each_tuple(static_cast<std::size_t>(n), f.elements(), [&](const std::vector<FieldElem>& x) {
        for (int e = 0; e < m; ++e) {
            const auto diff = f.sub(x[g.edge(e).tail], x[g.edge(e).head]);
            sq[e] = f.mul(diff, diff);
        }
        for_each_tuple(static_cast<std::size_t>(m), units, [&](const std::vector<FieldElem>& alpha) {
            FieldElem form = f.zero();
            for (int e = 0; e < m; ++e) form = f.add(form, f.mul(sq[e], alpha[e]));
            total += chi[form.value];
        });
    });
    total /= std::pow(static_cast<double>(f.q()), n);
    const double want = static_cast<double>(flow_poly(g).evaluate(f.q()));
    r.compare(total, want);
    return r;
}

ComplexVal quadratic_form_sum(const Field& f, const FqMatrix& b) {
    const int n = static_cast<int>(b.rows());
    require_budget(saturating_pow(f.q(), static_cast<unsigned>(n)), 10'000'000ULL, "q^n");
    const auto chi = chi_table(f);
    ComplexVal sum = 0.0;
    for_each_tuple(static_cast<std::size_t>(n), f.elements(), [&](const std::vector<FieldElem>& x) {
        FieldElem form = f.zero();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) form = f.add(form, f.mul(f.mul(x[i], b(i, j)), x[j]));
        }
        sum += chi[form.value];
    });
    return sum;
}

ComplexVal quadratic_form_formula(const Field& f, const FqMatrix& b) {
    const auto cert = max_nonsingular_principal(f, b);
    const ComplexVal ratio = gauss_formula(f) / static_cast<double>(f.q());
    return std::pow(static_cast<double>(f.q()), static_cast<double>(b.rows())) * static_cast<double>(cert.eta_minor) *
           std::pow(ratio, cert.rank);
}

FqMatrix random_symmetric(const Field& f, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    std::bernoulli_distribution keep(0.5);
    const bool sparse = seed % 2 == 1;
    FqMatrix b = zero_matrix(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            FieldElem v{pick(rng)};
            if (sparse && !keep(rng)) v = f.zero();
            b(i, j) = v;
            b(j, i) = v;
        }
    }
    return b;
}

CheckReport verify_multidim_gauss(int n, const Field& f, int trials, std::uint64_t seed) {
    require_budget(saturating_pow(f.q(), static_cast<unsigned>(n)), 10'000'000ULL, "q^n");
    CheckReport r;
    r.name = "multidimensional gauss sum n=" + std::to_string(n) + " q=" + std::to_string(f.q());
    for (int t = 0; t < trials; ++t) {
        const FqMatrix b = random_symmetric(f, n, seed + static_cast<std::uint64_t>(t));
        r.compare(quadratic_form_sum(f, b), quadratic_form_formula(f, b));
    }
    return r;
}

CheckReport verify_k3_identity(const Field& f) {
    require_small_field(f, 13);
    CheckReport r;
    r.name = "triangle identity q=" + std::to_string(f.q());
    const ComplexVal ratio = gauss_formula(f) / static_cast<double>(f.q());
    std::int64_t eta_sum = 0;
    for_each_tuple(3, f.units(), [&](const std::vector<FieldElem>& a) {
        const auto s = f.add(f.add(f.mul(a[0], a[1]), f.mul(a[0], a[2])), f.mul(a[1], a[2]));
        eta_sum += f.eta(s);
    });
    r.compare(static_cast<double>(eta_sum) * ratio * ratio, static_cast<double>(f.q() - 1));
    return r;
}

CheckReport verify_matrix_tree(const Multigraph& g, const Field& f) {
    require_budget(saturating_pow(f.q(), static_cast<unsigned>(g.num_edges())), 1'000'000ULL, "q^|E|");
    CheckReport r = exact_report("matrix-tree q=" + std::to_string(f.q()));
    for_each_tuple(static_cast<std::size_t>(g.num_edges()), f.elements(), [&](const std::vector<FieldElem>& a) {
        r.compare_exact(s_alpha_det(f, g, a) == s_alpha_bruteforce(f, g, a));
    });
    return r;
}

CheckReport verify_forest_minors(const Multigraph& g, const Field& f, int cases, std::uint64_t seed) {
    CheckReport r = exact_report("forest minors q=" + std::to_string(f.q()));
    std::mt19937_64 rng(seed);
    const int n = g.num_vertices();
    std::uniform_int_distribution<std::uint32_t> pick_mask(1, (1u << n) - 1);
    for (int t = 0; t < cases; ++t) {
        const auto a = random_weights(f, g.num_edges(), true, rng);
        const std::uint32_t mask = pick_mask(rng);
        VertexSubset roots, rest;
        for (int v = 0; v < n; ++v) (mask >> v & 1 ? roots : rest).push_back(v);
        const FqMatrix lap = laplacian(f, g, a);
        const FieldElem minor = rest.empty() ? f.one() : determinant(f, principal_submatrix(lap, rest));
        r.compare_exact(forest_sum(f, g, a, roots) == minor);
    }
    return r;
}

CheckReport verify_contracted_minors(const Multigraph& g, const Field& f, int cases, std::uint64_t seed) {
    CheckReport r = exact_report("contracted minors q=" + std::to_string(f.q()));
    std::mt19937_64 rng(seed);
    for (int t = 0; t < cases; ++t) {
        const auto a = random_weights(f, g.num_edges(), false, rng);
        const auto cert = wstar(f, g, a);
        const auto& w = *cert.wstar;
        const Multigraph gw = contract(g, w);
        const FieldElem s = s_alpha_bruteforce(f, gw, restrict_weights(a, contracted_edges(g, w)));
        r.compare_exact(!s.is_zero() && f.eta(s) == cert.eta_minor);
    }
    return r;
}

CheckReport verify_eta_choice_independence(const Field& f, int max_n, int cases, std::uint64_t seed) {
    CheckReport r = exact_report("eta choice independence q=" + std::to_string(f.q()));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(1, max_n);
    std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
    for (int t = 0; t < cases; ++t) {
        const int n = pick_n(rng);
        FqMatrix b;
        if (t % 3 == 2) {
            // C^T D C with C of k < n rows: a symmetric matrix of rank at most k.
            const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
            FqMatrix c = zero_matrix(k, n);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j) c(i, j) = FieldElem{pick(rng)};
            std::vector<FieldElem> d(static_cast<std::size_t>(k));
            for (auto& x : d) x = FieldElem{pick(rng)};
            b = zero_matrix(n, n);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    FieldElem s = f.zero();
                    for (int l = 0; l < k; ++l) s = f.add(s, f.mul(f.mul(c(l, i), d[l]), c(l, j)));
                    b(i, j) = s;
                }
            }
        } else {
            b = random_symmetric(f, n, rng());
        }
        const auto minors = principal_minors(f, b);
        int best = 0;
        for (std::uint32_t mask = 0; mask < minors.size(); ++mask)
            if (!minors[mask].is_zero()) best = std::max(best, std::popcount(mask));
        bool consistent = true;
        int eta = 0;
        for (std::uint32_t mask = 0; mask < minors.size(); ++mask) {
            if (std::popcount(mask) != best || minors[mask].is_zero()) continue;
            const int e = f.eta(minors[mask]);
            if (eta == 0) eta = e;
            consistent = consistent && e == eta;
        }
        const auto cert = max_nonsingular_principal(f, b);
        r.compare_exact(consistent && cert.rank == best && cert.eta_minor == eta);
    }
    return r;
}

CheckReport verify_minor_divisibility(const Multigraph& g, const Field& f, int cases, std::uint64_t seed) {
    if (f.d() != 1) throw Error(ErrorCode::InvalidArgument, "integer lifting needs a prime field");
    CheckReport r = exact_report("integer minor divisibility q=" + std::to_string(f.q()));
    std::mt19937_64 rng(seed);
    const int n = g.num_vertices();
    using IntMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;
    for (int t = 0; t < cases; ++t) {
        const auto a = random_weights(f, g.num_edges(), false, rng);
        IntMatrix lap = IntMatrix::Zero(n, n);
        for (int e = 0; e < g.num_edges(); ++e) {
            const auto [i, j] = g.edge(e);
            const BigInt w = a[static_cast<std::size_t>(e)].value;
            lap(i, i) += w;
            lap(j, j) += w;
            lap(i, j) -= w;
            lap(j, i) -= w;
        }
        const int rk = rank_fq(f, laplacian(f, g, a));
        bool ok = true;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            const int order = std::popcount(mask);
            if (order <= rk) continue;
            std::vector<int> idx;
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1) idx.push_back(v);
            const BigInt det = bareiss_determinant<BigInt>(lap(idx, idx));
            ok = ok && det % ipow(BigInt(f.p()), static_cast<unsigned>(order - rk)) == 0;
        }
        r.compare_exact(ok);
    }
    return r;
}

std::vector<std::string> suite_names() {
    return {"delta", "onedim", "gauss", "lemma1", "keylemma", "multidim", "k3", "matrixtree", "minors", "all"};
}

std::vector<CheckReport> run_suite(const std::string& suite, const Field& f) {
    if (suite == "all") {
        std::vector<CheckReport> out;
        for (const auto& name : suite_names()) {
            if (name == "all") continue;
            auto part = run_suite(name, f);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }

    std::vector<CheckReport> out;
    // Runs a check and drops it when its size guard trips at this q.
    auto attempt = [&](const std::string& label, const std::function<CheckReport()>& check) {
        try {
            auto rep = check();
            if (!label.empty()) rep.name += " [" + label + "]";
            out.push_back(std::move(rep));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooLarge && e.code() != ErrorCode::FieldTooLarge) throw;
        }
    };
    const Multigraph k3 = named_graph("k3");
    const Multigraph k4 = named_graph("k4");
    const Multigraph parallel3(2, {{0, 1}, {0, 1}, {0, 1}});

    if (suite == "delta") {
        attempt("", [&] { return verify_delta_identity(f); });
    } else if (suite == "onedim") {
        attempt("", [&] { return verify_gauss_onedim(f); });
    } else if (suite == "gauss") {
        attempt("", [&] { return verify_gauss_closed_form(f); });
    } else if (suite == "lemma1") {
        attempt("single edge", [&] { return verify_lemma1(path_graph(2), f); });
        attempt("path3", [&] { return verify_lemma1(path_graph(3), f); });
        attempt("k3", [&] { return verify_lemma1(k3, f); });
    } else if (suite == "keylemma") {
        attempt("k3", [&] { return verify_key_lemma(k3, f); });
        attempt("k4", [&] { return verify_key_lemma(k4, f); });
        attempt("two_triangles_bridge", [&] { return verify_key_lemma(named_graph("two_triangles_bridge"), f); });
    } else if (suite == "multidim") {
        for (int n : {2, 3}) attempt("", [&] { return verify_multidim_gauss(n, f, 100); });
    } else if (suite == "k3") {
        attempt("", [&] { return verify_k3_identity(f); });
    } else if (suite == "matrixtree") {
        attempt("k3", [&] { return verify_matrix_tree(k3, f); });
        attempt("k4", [&] { return verify_matrix_tree(k4, f); });
        attempt("parallel3", [&] { return verify_matrix_tree(parallel3, f); });
    } else if (suite == "minors") {
        for (const auto& [label, g] : std::vector<std::pair<std::string, Multigraph>>{
                 {"k3", k3}, {"k4", k4}, {"parallel3", parallel3}, {"k33", named_graph("k33")}}) {
            attempt(label, [&] { return verify_forest_minors(g, f, 200); });
            attempt(label, [&] { return verify_contracted_minors(g, f, 200); });
            if (f.d() == 1) attempt(label, [&] { return verify_minor_divisibility(g, f, 200); });
        }
        attempt("", [&] { return verify_eta_choice_independence(f, 6, 500); });
    } else {
        throw Error(ErrorCode::UnknownSuite, suite);
    }
    return out;
}

}  // namespace fqflow
