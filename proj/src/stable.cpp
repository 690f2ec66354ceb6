#include "fqflow/stable.hpp"

#include <atomic>
#include <string>
#include <thread>
#include <unordered_map>

#include "fqflow/error.hpp"
#include "fqflow/rank_stream.hpp"

namespace fqflow {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

template <typename Arith>
class Enumerator {
public:
    using Elem = typename Arith::Elem;

    Enumerator(const Arith& arith, const StreamPlan& plan, std::vector<std::vector<Elem>> values, bool memoize)
        : arith_(arith), plan_(plan), values_(std::move(values)), m_(plan.edge_order.size()), memoize_(memoize) {}

    RankHistogram run(unsigned threads) const {
        // Prefix length: enough tasks to keep every worker busy.
        std::size_t prefix = 0;
        std::uint64_t tasks = 1;
        const std::uint64_t wanted = threads > 1 ? std::uint64_t{threads} * 64 : 1;
        while (prefix < m_ && tasks < wanted) {
            tasks *= values_[prefix].size();
            ++prefix;
        }

        std::vector<RankHistogram> partial(threads);
        std::atomic<std::uint64_t> next{0};
        auto worker = [&](unsigned id) {
            RankHistogram& hist = partial[id];
            hist = empty_histogram();
            RankStream<Arith> stream(arith_, plan_);
            Memo memo(m_ + 1, kMemoEntries / threads);
            for (std::uint64_t task = next++; task < tasks; task = next++) {
                std::uint64_t rest = task;
                // Decode the task index with the last prefix position varying fastest.
                std::vector<Elem> digits(prefix);
                for (std::size_t k = prefix; k-- > 0;) {
                    const auto base = values_[k].size();
                    digits[k] = values_[k][rest % base];
                    rest /= base;
                }
                for (std::size_t k = 0; k < prefix; ++k) stream.advance(k, digits[k]);
                descend(stream, prefix, hist, memo);
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }

        RankHistogram total = empty_histogram();
        for (const auto& h : partial) {
            if (h.eta_sum.empty()) continue;
            for (std::size_t r = 0; r < total.eta_sum.size(); ++r) {
                total.eta_sum[r] += h.eta_sum[r];
                total.count[r] += h.count[r];
            }
            total.assignments += h.assignments;
        }
        return total;
    }

private:
    // Upper bound on cached subtrees across all workers of one run.
    static constexpr std::size_t kMemoEntries = std::size_t{1} << 20;

    // Subtree totals relative to the rank and sign at the subtree root:
    // eta_sum[d] and count[d] collect completions that add d to the rank.
    struct Memo {
        Memo(std::size_t depths, std::size_t cap) : tables(depths), capacity(cap) {}
        std::vector<std::unordered_map<std::string, RankHistogram>> tables;
        std::size_t size = 0;
        std::size_t capacity;
    };

    RankHistogram empty_histogram() const {
        RankHistogram h;
        h.eta_sum.assign(static_cast<std::size_t>(plan_.num_vertices), 0);
        h.count.assign(static_cast<std::size_t>(plan_.num_vertices), 0);
        return h;
    }

    // Adds a relative subtree histogram at the given root rank and sign.
    static void replay(const RankHistogram& rel, RankSign root, RankHistogram& hist) {
        const auto base = static_cast<std::size_t>(root.rank);
        for (std::size_t d = 0; base + d < hist.eta_sum.size(); ++d) {
            hist.eta_sum[base + d] += root.eta * rel.eta_sum[d];
            hist.count[base + d] += rel.count[d];
        }
        hist.assignments += rel.assignments;
    }

    void descend(RankStream<Arith>& stream, std::size_t k, RankHistogram& hist, Memo& memo) const {
        if (k == m_) {
            record(stream.at_depth(k), hist);
            return;
        }
        // Subtrees one edge from the leaves are cheaper to expand than to look up.
        if (!memoize_ || k + 2 > m_) {
            expand(stream, k, hist, memo);
            return;
        }
        std::string key;
        stream.state_key(k, key);
        auto& table = memo.tables[k];
        const RankSign root = stream.at_depth(k);
        if (auto it = table.find(key); it != table.end()) {
            replay(it->second, root, hist);
            return;
        }
        RankHistogram sub = empty_histogram();
        expand(stream, k, sub, memo);
        RankHistogram rel = empty_histogram();
        for (std::size_t r = static_cast<std::size_t>(root.rank); r < sub.eta_sum.size(); ++r) {
            rel.eta_sum[r - static_cast<std::size_t>(root.rank)] = root.eta * sub.eta_sum[r];
            rel.count[r - static_cast<std::size_t>(root.rank)] = sub.count[r];
        }
        rel.assignments = sub.assignments;
        replay(rel, root, hist);
        if (memo.size < memo.capacity) {
            table.emplace(std::move(key), std::move(rel));
            ++memo.size;
        }
    }

    void expand(RankStream<Arith>& stream, std::size_t k, RankHistogram& hist, Memo& memo) const {
        const bool leaf = k + 1 == m_;
        for (Elem v : values_[k]) {
            stream.advance(k, v);
            if (leaf) {
                record(stream.at_depth(m_), hist);
            } else {
                descend(stream, k + 1, hist, memo);
            }
        }
    }

    static void record(RankSign rs, RankHistogram& hist) {
        hist.eta_sum[static_cast<std::size_t>(rs.rank)] += rs.eta;
        ++hist.count[static_cast<std::size_t>(rs.rank)];
        ++hist.assignments;
    }

    const Arith& arith_;
    const StreamPlan& plan_;
    std::vector<std::vector<Elem>> values_;
    std::size_t m_;
    bool memoize_;
};

template <typename Arith>
RankHistogram run_enumeration(const Arith& arith, const StreamPlan& plan, const Field& f, WeightRange range,
                              bool pin_first_edge, unsigned threads, bool memoize) {
    using Elem = typename Arith::Elem;
    std::vector<Elem> base;
    for (auto x : (range == WeightRange::Units ? f.units() : f.elements())) base.push_back(Arith::from(x));
    std::vector<std::vector<Elem>> values(plan.edge_order.size(), base);
    if (pin_first_edge && !values.empty()) values[0] = {Arith::from(f.one())};
    return Enumerator<Arith>(arith, plan, std::move(values), memoize).run(threads);
}

void require_connected(const Multigraph& g) {
    if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "enumeration needs a connected graph");
}

}  // namespace

RankHistogram enumerate_ranks(const Multigraph& g, const Field& f, WeightRange range, bool pin_first_edge,
                              unsigned threads, bool memoize) {
    const auto plan = StreamPlan::build(g);
    threads = resolve_threads(threads);
    if (f.q() <= TableArith::kMaxOrder) {
        const TableArith arith(f);
        return run_enumeration(arith, plan, f, range, pin_first_edge, threads, memoize);
    }
    const FieldArith arith(f);
    return run_enumeration(arith, plan, f, range, pin_first_edge, threads, memoize);
}

STable s_table(const Multigraph& g, const Field& f, const EnumerationOptions& opts, std::string graph_id) {
    require_connected(g);
    for (const auto& e : g.edges()) {
        if (e.tail == e.head) throw Error(ErrorCode::HasLoops, "strip loops before enumerating");
    }
    const auto m = static_cast<unsigned>(g.num_edges());
    const bool reduce = opts.scaling_reduction && m >= 1;
    const std::uint64_t space = saturating_pow(f.q() - 1, reduce ? m - 1 : m);
    if (space > kSearchSpaceLimit && !opts.force) {
        throw Error(ErrorCode::SearchSpaceTooLarge,
                    std::to_string(space) + " assignments exceed the limit of " + std::to_string(kSearchSpaceLimit));
    }

    const auto hist = enumerate_ranks(g, f, WeightRange::Units, reduce, opts.threads, opts.memoize);

    STable t;
    t.q = f.q();
    t.graph_id = std::move(graph_id);
    t.reduced = reduce;
    t.assignments_enumerated = hist.assignments;
    t.s_values.resize(hist.eta_sum.size());
    for (std::size_t r = 0; r < hist.eta_sum.size(); ++r) {
        if (!reduce) {
            t.s_values[r] = hist.eta_sum[r];
        } else if (r % 2 == 0) {
            // Each scaling orbit has q-1 members with equal eta when r is even.
            t.s_values[r] = BigInt(hist.eta_sum[r]) * (f.q() - 1);
        }
    }
    t.flow_value = flow_from_stable(t, f);
    return t;
}

STable scaling_reduction_enumerate(const Multigraph& g, const Field& f, EnumerationOptions opts,
                                   std::string graph_id) {
    if (g.num_edges() < 1) throw Error(ErrorCode::InvalidArgument, "scaling reduction needs at least one edge");
    opts.scaling_reduction = true;
    return s_table(g, f, opts, std::move(graph_id));
}

BigInt flow_from_stable(const STable& t, const Field& f) {
    if (t.q != f.q()) throw Error(ErrorCode::InvalidArgument, "table and field disagree on q");
    for (std::size_t r = 1; r < t.s_values.size(); r += 2) {
        if (t.s_values[r] != 0) {
            throw Error(ErrorCode::OddRankResidue, "S(" + std::to_string(r) + ") = " + t.s_values[r].str());
        }
    }
    if (t.s_values.empty()) return 0;
    const std::size_t top = (t.s_values.size() - 1) / 2 * 2;  // largest even rank
    const BigInt q = f.q();
    const int sign = f.eta_minus_one();
    // Clear denominators: multiply every term by q^{top/2}.
    BigInt numerator = 0;
    for (std::size_t r = 0; r <= top; r += 2) {
        BigInt term = t.s_values[r] * ipow(q, static_cast<unsigned>((top - r) / 2));
        if (sign < 0 && (r / 2) % 2 == 1) term = -term;
        numerator += term;
    }
    const BigInt denominator = ipow(q, static_cast<unsigned>(top / 2));
    if (numerator % denominator != 0) {
        throw Error(ErrorCode::NonIntegerResult, numerator.str() + " / " + denominator.str());
    }
    return numerator / denominator;
}

BigInt n_count(const Multigraph& g, const Field& f, const EnumerationOptions& opts) {
    require_connected(g);
    const auto m = static_cast<unsigned>(g.num_edges());
    const std::uint64_t space = saturating_pow(f.q(), m);
    if (space > kNCountLimit && !opts.force) {
        throw Error(ErrorCode::SearchSpaceTooLarge,
                    std::to_string(space) + " assignments exceed the limit of " + std::to_string(kNCountLimit));
    }
    const auto hist = enumerate_ranks(g, f, WeightRange::All, false, opts.threads, opts.memoize);
    // s(alpha, G) is the (n-1)-order minor, nonzero exactly at full rank.
    return BigInt(hist.count.back());
}

std::vector<BigInt> rank_profile(const Multigraph& g, const Field& f, const EnumerationOptions& opts) {
    require_connected(g);
    const auto m = static_cast<unsigned>(g.num_edges());
    const bool reduce = opts.scaling_reduction && m >= 1;
    const std::uint64_t space = saturating_pow(f.q() - 1, reduce ? m - 1 : m);
    if (space > kSearchSpaceLimit && !opts.force) {
        throw Error(ErrorCode::SearchSpaceTooLarge, std::to_string(space) + " assignments exceed the limit");
    }
    const auto hist = enumerate_ranks(g, f, WeightRange::Units, reduce, opts.threads, opts.memoize);
    std::vector<BigInt> out;
    for (auto c : hist.count) out.push_back(reduce ? BigInt(c) * (f.q() - 1) : BigInt(c));
    return out;
}

}  // namespace fqflow
