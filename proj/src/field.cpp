#include "fqflow/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fqflow/error.hpp"

namespace fqflow {

namespace {

using Poly = std::vector<std::uint64_t>;  // coefficients mod p, constant term first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, std::uint64_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
        }
        trim(a);
    }
    return a;
}

bool has_factor_of_degree(const Poly& f, std::uint64_t p, std::uint32_t k) {
    // Monic candidates g = x^k + c_{k-1} x^{k-1} + ... + c_0.
    Poly g(k + 1, 0);
    g[k] = 1;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < k; ++i) {
            g[i] = t % p;
            t /= p;
        }
        if (poly_mod(f, g, p).empty()) return true;
    }
    return false;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
    const std::uint32_t d = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t k = 1; k <= d / 2; ++k) {
        if (has_factor_of_degree(f, p, k)) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) return false;
    }
    return true;
}

Field Field::make(std::uint32_t p, std::uint32_t d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "field degree must be at least 1");
    if (p == 2) throw Error(ErrorCode::EvenP, "characteristic 2 is not supported");
    if (!is_prime(p)) {
        throw Error(ErrorCode::CompositeP, std::to_string(p) + " is not prime");
    }
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        q *= p;
        if (q > kMaxOrder) {
            throw Error(ErrorCode::DegreeTooLarge,
                        std::to_string(p) + "^" + std::to_string(d) + " exceeds 2^31");
        }
    }

    Field f;
    f.p_ = p;
    f.d_ = d;
    f.q_ = static_cast<std::uint32_t>(q);
    if (d > 1) {
        // Lexicographically smallest monic irreducible: compare coefficient
        // sequences c_0, c_1, ..., c_{d-1} with c_0 most significant.
        Poly cand(d + 1, 0);
        cand[d] = 1;
        for (std::uint64_t idx = 0; idx < q; ++idx) {
            std::uint64_t t = idx;
            for (std::uint32_t i = d; i-- > 0;) {
                cand[i] = t % p;
                t /= p;
            }
            if (cand[0] != 0 && is_irreducible(cand, p)) {
                f.modulus_.assign(cand.begin(), cand.end());
                break;
            }
        }
    }
    if (q <= kTableLimit) f.build_tables();
    return f;
}

Field Field::from_order(std::uint64_t q) {
    if (q < 2) throw Error(ErrorCode::InvalidArgument, "field order must be at least 2");
    std::uint64_t p = 0;
    for (std::uint64_t f = 2; f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    std::uint32_t d = 0;
    std::uint64_t t = q;
    while (t % p == 0) {
        t /= p;
        ++d;
    }
    if (t != 1) {
        throw Error(ErrorCode::CompositeP, std::to_string(q) + " is not a prime power");
    }
    if (q > kMaxOrder) throw Error(ErrorCode::DegreeTooLarge, std::to_string(q) + " exceeds 2^31");
    return make(static_cast<std::uint32_t>(p), d);
}

void Field::build_tables() {
    const std::uint32_t order = q_ - 1;
    const auto factors = prime_factors(order);
    std::uint32_t gen = 0;
    for (std::uint32_t c = 1; c < q_ && gen == 0; ++c) {
        bool primitive = true;
        for (auto l : factors) {
            if (pow_slow(FieldElem{c}, order / l).value == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) gen = c;
    }
    exp_.assign(order, 0);
    log_.assign(q_, 0);
    FieldElem cur{1};
    for (std::uint32_t k = 0; k < order; ++k) {
        exp_[k] = cur.value;
        log_[cur.value] = k;
        cur = poly_mul(cur, FieldElem{gen});
    }
}

FieldElem Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return FieldElem{static_cast<std::uint32_t>(r)};
}

FieldElem Field::from_coeffs(std::span<const std::uint32_t> c) const {
    std::uint64_t v = 0;
    std::uint64_t scale = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
        const std::uint32_t ci = i < c.size() ? c[i] % p_ : 0;
        v += ci * scale;
        scale *= p_;
    }
    return FieldElem{static_cast<std::uint32_t>(v)};
}

std::vector<std::uint32_t> Field::coeffs(FieldElem a) const {
    std::vector<std::uint32_t> c(d_);
    std::uint32_t t = a.value;
    for (std::uint32_t i = 0; i < d_; ++i) {
        c[i] = t % p_;
        t /= p_;
    }
    return c;
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
    if (d_ == 1) {
        std::uint64_t s = std::uint64_t{a.value} + b.value;
        if (s >= p_) s -= p_;
        return FieldElem{static_cast<std::uint32_t>(s)};
    }
    std::uint32_t x = a.value, y = b.value, out = 0, scale = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
        std::uint32_t s = x % p_ + y % p_;
        if (s >= p_) s -= p_;
        out += s * scale;
        scale *= p_;
        x /= p_;
        y /= p_;
    }
    return FieldElem{out};
}

FieldElem Field::neg(FieldElem a) const {
    if (d_ == 1) return FieldElem{a.value == 0 ? 0 : p_ - a.value};
    std::uint32_t x = a.value, out = 0, scale = 1;
    for (std::uint32_t i = 0; i < d_; ++i) {
        const std::uint32_t c = x % p_;
        out += (c == 0 ? 0 : p_ - c) * scale;
        scale *= p_;
        x /= p_;
    }
    return FieldElem{out};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem Field::poly_mul(FieldElem a, FieldElem b) const {
    if (d_ == 1) {
        return FieldElem{static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_)};
    }
    Poly x(d_), y(d_);
    std::uint32_t s = a.value, t = b.value;
    for (std::uint32_t i = 0; i < d_; ++i) {
        x[i] = s % p_;
        y[i] = t % p_;
        s /= p_;
        t /= p_;
    }
    Poly prod(2 * d_ - 1, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
        if (x[i] == 0) continue;
        for (std::uint32_t j = 0; j < d_; ++j) {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
        }
    }
    Poly mod(modulus_.begin(), modulus_.end());
    Poly r = poly_mod(std::move(prod), mod, p_);
    std::uint64_t v = 0, scale = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        v += r[i] * scale;
        scale *= p_;
    }
    return FieldElem{static_cast<std::uint32_t>(v)};
}

FieldElem Field::mul(FieldElem a, FieldElem b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    if (has_tables()) {
        std::uint32_t k = log_[a.value] + log_[b.value];
        if (k >= q_ - 1) k -= q_ - 1;
        return FieldElem{exp_[k]};
    }
    return poly_mul(a, b);
}

FieldElem Field::pow_slow(FieldElem a, std::uint64_t e) const {
    FieldElem result{1};
    FieldElem base = a;
    while (e > 0) {
        if (e & 1) result = poly_mul(result, base);
        base = poly_mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElem Field::pow(FieldElem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.is_zero()) return zero();
    if (has_tables()) {
        const std::uint64_t k = (std::uint64_t{log_[a.value]} * (e % (q_ - 1))) % (q_ - 1);
        return FieldElem{exp_[k]};
    }
    return pow_slow(a, e);
}

FieldElem Field::inv(FieldElem a) const {
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (has_tables()) {
        const std::uint32_t k = log_[a.value];
        return FieldElem{exp_[k == 0 ? 0 : q_ - 1 - k]};
    }
    return pow_slow(a, std::uint64_t{q_} - 2);
}

int Field::eta(FieldElem a) const {
    if (a.is_zero()) return 0;
    if (has_tables()) return (log_[a.value] % 2 == 0) ? 1 : -1;
    return pow_slow(a, (std::uint64_t{q_} - 1) / 2).value == 1 ? 1 : -1;
}

FieldElem Field::trace(FieldElem a) const {
    FieldElem sum = a;
    FieldElem frob = a;
    for (std::uint32_t k = 1; k < d_; ++k) {
        frob = pow(frob, p_);
        sum = add(sum, frob);
    }
    return sum;
}

ComplexVal Field::chi1(FieldElem a) const {
    const double t = static_cast<double>(trace(a).value);
    const double angle = 2.0 * std::numbers::pi * t / static_cast<double>(p_);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<FieldElem> Field::elements() const {
    std::vector<FieldElem> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = FieldElem{i};
    return out;
}

std::vector<FieldElem> Field::units() const {
    std::vector<FieldElem> out(q_ - 1);
    for (std::uint32_t i = 1; i < q_; ++i) out[i - 1] = FieldElem{i};
    return out;
}

ComplexVal gauss_formula(const Field& f) {
    const double root = std::sqrt(static_cast<double>(f.q()));
    const double sign = (f.d() % 2 == 1) ? 1.0 : -1.0;  // (-1)^{d-1}
    if (f.p() % 4 == 1) return {sign * root, 0.0};
    ComplexVal id{1.0, 0.0};
    for (std::uint32_t k = 0; k < f.d(); ++k) id *= ComplexVal{0.0, 1.0};
    return sign * id * root;
}

ComplexVal gauss_direct(const Field& f) {
    if (f.q() > 10000) {
        throw Error(ErrorCode::FieldTooLarge, "direct Gauss sum limited to q <= 10^4");
    }
    ComplexVal sum{0.0, 0.0};
    for (auto x : f.units()) sum += static_cast<double>(f.eta(x)) * f.chi1(x);
    return sum;
}

FqMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
    return FqMatrix::Constant(rows, cols, FieldElem{0});
}

FieldElem determinant(const Field& f, FqMatrix m) {
    const Eigen::Index n = m.rows();
    FieldElem det = f.one();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) return f.zero();
        if (piv != col) {
            m.row(piv).swap(m.row(col));
            det = f.neg(det);
        }
        const FieldElem pivot = m(col, col);
        det = f.mul(det, pivot);
        const FieldElem pinv = f.inv(pivot);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            const FieldElem factor = f.mul(m(r, col), pinv);
            for (Eigen::Index c = col; c < n; ++c) {
                m(r, c) = f.sub(m(r, c), f.mul(factor, m(col, c)));
            }
        }
    }
    return det;
}

int rank(const Field& f, FqMatrix m) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    int r = 0;
    for (Eigen::Index col = 0; col < cols && r < rows; ++col) {
        Eigen::Index piv = r;
        while (piv < rows && m(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        m.row(piv).swap(m.row(r));
        const FieldElem pinv = f.inv(m(r, col));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            if (m(i, col).is_zero()) continue;
            const FieldElem factor = f.mul(m(i, col), pinv);
            for (Eigen::Index c = col; c < cols; ++c) {
                m(i, c) = f.sub(m(i, c), f.mul(factor, m(r, c)));
            }
        }
        ++r;
    }
    return r;
}

}  // namespace fqflow
