#pragma once

#include <string>
#include <vector>

#include "fqflow/bigint.hpp"
#include "fqflow/graph.hpp"

namespace fqflow {

/// Integer polynomial in q; coefficient i multiplies q^i. No trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    static IntPolynomial constant(const BigInt& c);
    /// q - 1
    static IntPolynomial q_minus_one();

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    BigInt evaluate(const BigInt& q) const;

    IntPolynomial& operator+=(const IntPolynomial& o);
    IntPolynomial& operator-=(const IntPolynomial& o);
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    /// e.g. "q^2 - 3q + 2"
    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// (q - 1)^k
IntPolynomial q_minus_one_power(int k);

/// Flow polynomial by deletion-contraction, F(G) = F(G/e) - F(G \ e), memoised
/// on a canonical relabelling of each minor. Throws TooLarge for |E| > 24.
IntPolynomial flow_poly(const Multigraph& g);

/// Number of nowhere-zero Z_q flows by direct enumeration of (Z_q \ {0})^E.
/// Throws TooLarge when (q-1)^|E| > 10^8.
BigInt flow_count_direct(const Multigraph& g, std::uint64_t q);

}  // namespace fqflow
