#include "fqflow/treesum.hpp"

#include <numeric>

#include "fqflow/error.hpp"
#include "fqflow/laplacian.hpp"

namespace fqflow {

namespace {

struct DisjointSets {
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
    std::vector<int> parent;
};

class TreeEnumerator {
public:
    TreeEnumerator(const Multigraph& g, const std::function<void(const std::vector<int>&)>& visit)
        : g_(g), visit_(visit) {}

    void run() { recurse(0, DisjointSets(g_.num_vertices()), g_.num_vertices()); }

private:
    // Deletion/contraction over edges in index order: edge i is either taken
    // (contracted into the forest) or deleted, pruning deletions that would
    // disconnect what remains.
    void recurse(int i, DisjointSets forest, int components) {
        if (components == 1) {
            visit_(chosen_);
            return;
        }
        if (i == g_.num_edges()) return;
        const auto& e = g_.edge(i);
        {
            DisjointSets next = forest;
            if (next.unite(e.tail, e.head)) {
                chosen_.push_back(i);
                recurse(i + 1, std::move(next), components - 1);
                chosen_.pop_back();
            }
        }
        if (still_connects(forest, components, i + 1)) recurse(i + 1, std::move(forest), components);
    }

    bool still_connects(DisjointSets forest, int components, int from) const {
        for (int j = from; j < g_.num_edges() && components > 1; ++j) {
            if (forest.unite(g_.edge(j).tail, g_.edge(j).head)) --components;
        }
        return components == 1;
    }

    const Multigraph& g_;
    const std::function<void(const std::vector<int>&)>& visit_;
    std::vector<int> chosen_;
};

}  // namespace

WeightAssignment restrict_weights(const WeightAssignment& a, const std::vector<int>& edge_indices) {
    WeightAssignment out;
    out.reserve(edge_indices.size());
    for (int e : edge_indices) out.push_back(a[static_cast<std::size_t>(e)]);
    return out;
}

void for_each_spanning_tree(const Multigraph& g, const std::function<void(const std::vector<int>&)>& visit) {
    if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "spanning trees need a connected graph");
    TreeEnumerator(g, visit).run();
}

std::vector<std::vector<int>> spanning_trees(const Multigraph& g) {
    std::vector<std::vector<int>> out;
    for_each_spanning_tree(g, [&](const std::vector<int>& t) { out.push_back(t); });
    return out;
}

FieldElem s_alpha_bruteforce(const Field& f, const Multigraph& g, const WeightAssignment& a) {
    FieldElem sum = f.zero();
    for_each_spanning_tree(g, [&](const std::vector<int>& tree) {
        FieldElem prod = f.one();
        for (int e : tree) prod = f.mul(prod, a[static_cast<std::size_t>(e)]);
        sum = f.add(sum, prod);
    });
    return sum;
}

FieldElem s_alpha_det(const Field& f, const Multigraph& g, const WeightAssignment& a) {
    if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "tree sum needs a connected graph");
    const int n = g.num_vertices();
    if (n <= 1) return f.one();
    const FqMatrix lap = laplacian(f, g, a);
    return determinant(f, lap.bottomRightCorner(n - 1, n - 1));
}

FieldElem forest_sum(const Field& f, const Multigraph& g, const WeightAssignment& a, const VertexSubset& roots_in) {
    if (roots_in.empty()) throw Error(ErrorCode::EmptyRoots, "forest sum needs at least one root");
    if (g.num_edges() > 20) throw Error(ErrorCode::TooLarge, "forest enumeration is capped at 20 edges");
    const auto roots = normalize_subset(g, roots_in);
    const int n = g.num_vertices();
    const int m = g.num_edges();
    const int k = static_cast<int>(roots.size());
    const int size = n - k;
    if (size == 0) return f.one();
    if (size > m) return f.zero();

    FieldElem sum = f.zero();
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        DisjointSets ds(n);
        bool ok = true;
        for (int e : pick) {
            if (!ds.unite(g.edge(e).tail, g.edge(e).head)) {
                ok = false;
                break;
            }
        }
        // n - k acyclic edges leave exactly k trees; each must hold one root.
        if (ok) {
            std::vector<int> seen;
            for (int r : roots) {
                const int c = ds.find(r);
                for (int s : seen) ok = ok && s != c;
                seen.push_back(c);
            }
        }
        if (ok) {
            FieldElem prod = f.one();
            for (int e : pick) prod = f.mul(prod, a[static_cast<std::size_t>(e)]);
            sum = f.add(sum, prod);
        }
        int i = size - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - size + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return sum;
}

}  // namespace fqflow
