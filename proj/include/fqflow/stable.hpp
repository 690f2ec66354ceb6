#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqflow/bigint.hpp"
#include "fqflow/field.hpp"
#include "fqflow/graph.hpp"

namespace fqflow {

inline constexpr std::uint64_t kSearchSpaceLimit = 10'000'000'000ULL;  // assignments per s_table run
inline constexpr std::uint64_t kNCountLimit = 1'000'000'000ULL;        // q^|E| for n_count

struct EnumerationOptions {
    bool scaling_reduction = true;
    unsigned threads = 0;  // 0 = hardware concurrency
    bool force = false;    // skip the feasibility guard
    bool memoize = true;   // reuse subtree totals for repeated elimination states
};

/// Graded character sums S(r, q), r = 0..|V|-1, and the flow value they encode.
struct STable {
    std::uint32_t q = 0;
    std::string graph_id;
    std::vector<BigInt> s_values;
    BigInt flow_value;
    std::optional<BigInt> n_count;
    std::uint64_t assignments_enumerated = 0;
    bool reduced = false;
};

/// Exact per-rank totals over an enumerated weight range.
struct RankHistogram {
    std::vector<std::int64_t> eta_sum;  // sum of eta_minor per rank
    std::vector<std::uint64_t> count;   // assignments per rank
    std::uint64_t assignments = 0;
};

enum class WeightRange { Units, All };

/// Runs the streaming elimination over every assignment of the chosen range,
/// optionally pinning the first enumerated edge to 1. Work is split by fixed
/// prefixes of the first few edges; each worker owns its accumulators and the
/// merge is a plain sum, so results do not depend on the thread count.
///
/// With memoize set, a worker caches the rank/sign histogram of every subtree
/// keyed by its residual elimination state and replays it on a repeat visit.
/// The totals are the same exact sums over every assignment; only the amount
/// of elimination work changes.
RankHistogram enumerate_ranks(const Multigraph& g, const Field& f, WeightRange range, bool pin_first_edge,
                              unsigned threads, bool memoize = true);

/// Throws Disconnected, HasLoops or SearchSpaceTooLarge.
STable s_table(const Multigraph& g, const Field& f, const EnumerationOptions& opts = {},
               std::string graph_id = {});

/// s_table with the global scaling reduction forced on.
STable scaling_reduction_enumerate(const Multigraph& g, const Field& f, EnumerationOptions opts = {},
                                   std::string graph_id = {});

/// sum over even r of S(r, q) eta(-1)^{r/2} / q^{r/2}, exactly.
/// Throws OddRankResidue or NonIntegerResult.
BigInt flow_from_stable(const STable& t, const Field& f);

/// Number of alpha in F_q^E (zeros allowed) with s(alpha, G) != 0.
BigInt n_count(const Multigraph& g, const Field& f, const EnumerationOptions& opts = {});

/// Assignments in (F_q^*)^E per Laplacian rank.
std::vector<BigInt> rank_profile(const Multigraph& g, const Field& f, const EnumerationOptions& opts = {});

unsigned resolve_threads(unsigned requested);

}  // namespace fqflow
