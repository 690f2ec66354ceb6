#include "fqflow/flowpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fqflow/error.hpp"

namespace fqflow {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::q_minus_one() { return IntPolynomial({BigInt(-1), BigInt(1)}); }

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::evaluate(const BigInt& q) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
    return acc;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const BigInt mag = c < 0 ? BigInt(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mag != 1 || i == 0) out += mag.str();
        if (i >= 1) out += "q";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

IntPolynomial q_minus_one_power(int k) {
    IntPolynomial out = IntPolynomial::constant(1);
    for (int i = 0; i < k; ++i) out = out * IntPolynomial::q_minus_one();
    return out;
}

namespace {

struct Minor {
    int n = 0;
    std::vector<Edge> edges;  // loopless, tail < head
};

class DeletionContraction {
public:
    IntPolynomial solve(const Minor& g) {
        if (g.edges.empty()) return IntPolynomial::constant(1);
        if (!bridges(Multigraph(g.n, g.edges)).empty()) return {};

        auto key = canonical_key(g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        // Split on an edge at a minimum-degree vertex; small degrees collapse fastest.
        std::vector<int> deg(static_cast<std::size_t>(g.n), 0);
        for (const auto& e : g.edges) {
            ++deg[static_cast<std::size_t>(e.tail)];
            ++deg[static_cast<std::size_t>(e.head)];
        }
        std::size_t pick = 0;
        int best = INT32_MAX;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const int d = std::min(deg[static_cast<std::size_t>(g.edges[i].tail)],
                                   deg[static_cast<std::size_t>(g.edges[i].head)]);
            if (d < best) {
                best = d;
                pick = i;
            }
        }
        const Edge split = g.edges[pick];

        Minor deleted = g;
        deleted.edges.erase(deleted.edges.begin() + static_cast<std::ptrdiff_t>(pick));

        // Contract head into tail; parallel copies of the split edge become loops.
        Minor contracted;
        contracted.n = g.n - 1;
        int loops = 0;
        auto relabel = [&](int v) {
            if (v == split.head) v = split.tail;
            return v > split.head ? v - 1 : v;
        };
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if (i == pick) continue;
            int a = relabel(g.edges[i].tail), b = relabel(g.edges[i].head);
            if (a == b) {
                ++loops;
                continue;
            }
            if (a > b) std::swap(a, b);
            contracted.edges.push_back({a, b});
        }

        IntPolynomial result = q_minus_one_power(loops) * solve(contracted) - solve(deleted);
        memo_.emplace(std::move(key), result);
        return result;
    }

private:
    // Exact key: isolated vertices dropped, vertices relabelled by
    // (degree, neighbour-degree multiset, old index), edge list sorted.
    static std::vector<int> canonical_key(const Minor& g) {
        std::vector<int> deg(static_cast<std::size_t>(g.n), 0);
        for (const auto& e : g.edges) {
            ++deg[static_cast<std::size_t>(e.tail)];
            ++deg[static_cast<std::size_t>(e.head)];
        }
        std::vector<std::vector<int>> sig(static_cast<std::size_t>(g.n));
        for (const auto& e : g.edges) {
            sig[static_cast<std::size_t>(e.tail)].push_back(deg[static_cast<std::size_t>(e.head)]);
            sig[static_cast<std::size_t>(e.head)].push_back(deg[static_cast<std::size_t>(e.tail)]);
        }
        for (auto& s : sig) std::sort(s.begin(), s.end());
        std::vector<int> order;
        for (int v = 0; v < g.n; ++v)
            if (deg[static_cast<std::size_t>(v)] > 0) order.push_back(v);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (deg[static_cast<std::size_t>(a)] != deg[static_cast<std::size_t>(b)])
                return deg[static_cast<std::size_t>(a)] < deg[static_cast<std::size_t>(b)];
            return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)];
        });
        std::vector<int> label(static_cast<std::size_t>(g.n), -1);
        for (std::size_t i = 0; i < order.size(); ++i) label[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : g.edges) {
            int a = label[static_cast<std::size_t>(e.tail)], b = label[static_cast<std::size_t>(e.head)];
            if (a > b) std::swap(a, b);
            edges.emplace_back(a, b);
        }
        std::sort(edges.begin(), edges.end());
        std::vector<int> key{static_cast<int>(order.size())};
        for (auto [a, b] : edges) {
            key.push_back(a);
            key.push_back(b);
        }
        return key;
    }

    std::map<std::vector<int>, IntPolynomial> memo_;
};

}  // namespace

IntPolynomial flow_poly(const Multigraph& g) {
    if (g.num_edges() > 24) throw Error(ErrorCode::TooLarge, "deletion-contraction is capped at 24 edges");
    Minor m;
    m.n = g.num_vertices();
    for (const auto& e : g.edges()) m.edges.push_back({std::min(e.tail, e.head), std::max(e.tail, e.head)});
    return DeletionContraction{}.solve(m);
}

BigInt flow_count_direct(const Multigraph& g, std::uint64_t q) {
    if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be at least 2");
    const int m = g.num_edges();
    if (saturating_pow(q - 1, static_cast<unsigned>(m)) > 100'000'000ULL) {
        throw Error(ErrorCode::TooLarge, "(q-1)^|E| exceeds 10^8");
    }
    const int n = g.num_vertices();
    // closes[e]: vertices whose last incident edge is e; their conservation
    // can be checked as soon as e is assigned.
    std::vector<std::vector<int>> closes(static_cast<std::size_t>(m));
    std::vector<int> last(static_cast<std::size_t>(n), -1);
    for (int e = 0; e < m; ++e) {
        last[static_cast<std::size_t>(g.edge(e).tail)] = e;
        last[static_cast<std::size_t>(g.edge(e).head)] = e;
    }
    for (int v = 0; v < n; ++v) {
        if (last[static_cast<std::size_t>(v)] >= 0) closes[static_cast<std::size_t>(last[static_cast<std::size_t>(v)])].push_back(v);
    }
    if (m == 0) return BigInt(1);

    std::vector<std::uint64_t> net(static_cast<std::size_t>(n), 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int e) -> void {
        if (e == m) {
            ++count;
            return;
        }
        const auto& ed = g.edge(e);
        auto& tail = net[static_cast<std::size_t>(ed.tail)];
        auto& head = net[static_cast<std::size_t>(ed.head)];
        for (std::uint64_t k = 1; k < q; ++k) {
            // k leaves the tail and enters the head.
            tail = (tail + q - k) % q;
            head = (head + k) % q;
            bool ok = true;
            for (int v : closes[static_cast<std::size_t>(e)]) ok = ok && net[static_cast<std::size_t>(v)] == 0;
            if (ok) self(self, e + 1);
            tail = (tail + k) % q;
            head = (head + q - k) % q;
        }
    };
    rec(rec, 0);
    return BigInt(count);
}

}  // namespace fqflow
