#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace fqflow {

using ComplexVal = std::complex<double>;

/// An element of F_{p^d}. The coefficients c_0..c_{d-1} of its polynomial-basis
/// representation are packed base p: value = c_0 + c_1 p + ... + c_{d-1} p^{d-1}.
/// Elements of the prime subfield therefore have value < p.
struct FieldElem {
    std::uint32_t value = 0;

    constexpr FieldElem() = default;
    constexpr explicit FieldElem(std::uint32_t v) : value(v) {}

    constexpr bool is_zero() const { return value == 0; }
    friend constexpr bool operator==(FieldElem, FieldElem) = default;
};

/// F_q for q = p^d with p an odd prime. Immutable after construction and
/// shareable across threads.
class Field {
public:
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;
    static constexpr std::uint32_t kTableLimit = 1u << 16;

    /// Throws EvenP, CompositeP or DegreeTooLarge.
    static Field make(std::uint32_t p, std::uint32_t d = 1);
    /// Accepts q = p^d directly.
    static Field from_order(std::uint64_t q);

    std::uint32_t p() const { return p_; }
    std::uint32_t d() const { return d_; }
    std::uint32_t q() const { return q_; }
    /// Monic modulus coefficients, constant term first (size d+1); empty when d = 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElem zero() const { return FieldElem{0}; }
    FieldElem one() const { return FieldElem{1}; }
    /// Image of an integer in the prime subfield.
    FieldElem from_int(std::int64_t v) const;
    FieldElem from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(FieldElem a) const;
    /// The class of x in F_p[x]/(modulus); only meaningful for d > 1.
    FieldElem x() const { return FieldElem{d_ > 1 ? p_ : 0}; }

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;  // DivisionByZero on 0
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
    FieldElem pow(FieldElem a, std::uint64_t e) const;

    /// Quadratic character: 0 for 0, 1 for nonzero squares, -1 otherwise.
    int eta(FieldElem a) const;
    /// eta(-1), i.e. (-1)^{(q-1)/2}.
    int eta_minus_one() const { return (q_ % 4 == 1) ? 1 : -1; }
    /// Absolute trace to F_p; result is in the prime subfield.
    FieldElem trace(FieldElem a) const;
    /// exp(2 pi i Tr(a) / p).
    ComplexVal chi1(FieldElem a) const;

    static int norm(FieldElem a) { return a.is_zero() ? 0 : 1; }
    static int delta(FieldElem a) { return 1 - norm(a); }

    /// All q elements in encoding order.
    std::vector<FieldElem> elements() const;
    /// The q-1 nonzero elements in encoding order.
    std::vector<FieldElem> units() const;

    bool has_tables() const { return !log_.empty(); }

private:
    Field() = default;

    FieldElem poly_mul(FieldElem a, FieldElem b) const;
    FieldElem pow_slow(FieldElem a, std::uint64_t e) const;
    void build_tables();

    std::uint32_t p_ = 0;
    std::uint32_t d_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    // Discrete log / antilog tables w.r.t. a primitive element, q <= 2^16.
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
};

/// g(q) from the closed form (-1)^{d-1} sqrt(q) or (-1)^{d-1} i^d sqrt(q).
ComplexVal gauss_formula(const Field& f);
/// g(q) = sum_x eta(x) chi1(x), by direct summation. FieldTooLarge for q > 10^4.
ComplexVal gauss_direct(const Field& f);

bool is_prime(std::uint64_t n);

}  // namespace fqflow

namespace Eigen {
template <>
struct NumTraits<fqflow::FieldElem> : GenericNumTraits<fqflow::FieldElem> {
    using Real = fqflow::FieldElem;
    using NonInteger = fqflow::FieldElem;
    using Nested = fqflow::FieldElem;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 0,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4,
    };
};
}  // namespace Eigen

namespace fqflow {

/// Dense matrix over F_q. Arithmetic goes through the Field free functions below;
/// Eigen provides storage, blocks and index views.
using FqMatrix = Eigen::Matrix<FieldElem, Eigen::Dynamic, Eigen::Dynamic>;

FqMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols);

/// Principal submatrix on the given (sorted) index set.
template <typename Derived>
auto principal_submatrix(const Eigen::MatrixBase<Derived>& m, const std::vector<int>& idx) {
    return m(idx, idx).eval();
}

/// Determinant over F_q by Gaussian elimination.
FieldElem determinant(const Field& f, FqMatrix m);
/// Rank over F_q by Gaussian elimination.
int rank(const Field& f, FqMatrix m);

}  // namespace fqflow
