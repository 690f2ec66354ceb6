#pragma once

// Brute-force verification of the character-sum identities behind the
// alpha-representation, plus exact oracle cross-checks of the minor identities.
// Complex sums use double precision and a fixed absolute tolerance; exact
// checks report the number of mismatches as their deviation with tolerance 0.

#include <cstdint>
#include <string>
#include <vector>

#include "fqflow/field.hpp"
#include "fqflow/graph.hpp"

namespace fqflow {

inline constexpr double kCheckTolerance = 1e-6;
inline constexpr std::uint64_t kDefaultCheckSeed = 20240517;

struct CheckReport {
    std::string name;
    std::uint64_t instances = 0;
    double max_deviation = 0.0;
    double tolerance = kCheckTolerance;
    bool passed = true;

    /// Records one comparison of a computed value against its expected value.
    void compare(ComplexVal got, ComplexVal want);
    /// Records one exact comparison.
    void compare_exact(bool equal);
};

/// sum_k chi1(k t) = q delta(t) for every t. q <= 49, else FieldTooLarge.
CheckReport verify_delta_identity(const Field& f);

/// sum_k chi1(k^2 t) = q if t = 0 else eta(t) g(q), for every t. q <= 49.
CheckReport verify_gauss_onedim(const Field& f);

/// g(q) by direct summation against the closed form.
CheckReport verify_gauss_closed_form(const Field& f);

/// For every k in F_q^E: sum over x in F_q^V of prod_e chi1((x_i(e) - x_f(e)) k_e)
/// equals q^|V| prod_v delta(sum_e eps_ve k_e). TooLarge if q^{|V|+|E|} > 10^8.
CheckReport verify_lemma1(const Multigraph& g, const Field& f);

/// q^{-|V|} sum over alpha in (F_q^*)^E and x in F_q^V of
/// chi1(sum_e (x_i(e) - x_f(e))^2 alpha_e) equals the flow polynomial at q.
/// TooLarge if (q-1)^|E| q^|V| > 10^8.
CheckReport verify_key_lemma(const Multigraph& g, const Field& f);

/// sum_{x in F_q^n} chi1(x^T B x) by direct summation. TooLarge if q^n > 10^7.
ComplexVal quadratic_form_sum(const Field& f, const FqMatrix& b);
/// q^n eta(det B_r) (g(q)/q)^r from the rank certificate of B.
ComplexVal quadratic_form_formula(const Field& f, const FqMatrix& b);

/// Random symmetric n x n matrices from a seeded generator; every odd trial
/// zeroes each upper-triangle entry with probability 1/2 so low ranks occur.
FqMatrix random_symmetric(const Field& f, int n, std::uint64_t seed);

/// Direct sum against the closed form for `trials` random symmetric matrices.
CheckReport verify_multidim_gauss(int n, const Field& f, int trials, std::uint64_t seed = kDefaultCheckSeed);

/// q - 1 = sum over alpha in (F_q^*)^3 of eta(a1 a2 + a1 a3 + a2 a3) (g(q)/q)^2.
/// q <= 13, else FieldTooLarge.
CheckReport verify_k3_identity(const Field& f);

/// Determinant tree sum against spanning-tree enumeration for every
/// assignment in F_q^E. TooLarge if q^|E| > 10^6.
CheckReport verify_matrix_tree(const Multigraph& g, const Field& f);

/// Forest sums against principal minors of the Laplacian for random
/// assignments (zeros allowed) and random nonempty root sets.
CheckReport verify_forest_minors(const Multigraph& g, const Field& f, int cases,
                                 std::uint64_t seed = kDefaultCheckSeed);

/// eta of the tree sum of G/W* against eta_minor of the certificate, for
/// random nonzero assignments.
CheckReport verify_contracted_minors(const Multigraph& g, const Field& f, int cases,
                                     std::uint64_t seed = kDefaultCheckSeed);

/// For random symmetric matrices of order 1..max_n, every nonsingular
/// principal submatrix of maximal order has the same eta of determinant.
CheckReport verify_eta_choice_independence(const Field& f, int max_n, int cases,
                                           std::uint64_t seed = kDefaultCheckSeed);

/// Weights lifted to integers in [1, p-1]: every principal minor of the
/// integer Laplacian of order rank + i is divisible by p^i. Prime fields
/// only (InvalidArgument otherwise).
CheckReport verify_minor_divisibility(const Multigraph& g, const Field& f, int cases,
                                      std::uint64_t seed = kDefaultCheckSeed);

/// Names accepted by run_suite, in run order, followed by "all".
std::vector<std::string> suite_names();

/// Runs one named suite at the field F_q using its standard instances.
/// Throws UnknownSuite. Instances whose size guard trips at this q are skipped.
std::vector<CheckReport> run_suite(const std::string& suite, const Field& f);

}  // namespace fqflow
