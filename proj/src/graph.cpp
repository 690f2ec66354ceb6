#include "fqflow/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "fqflow/error.hpp"

namespace fqflow {

Multigraph::Multigraph(int n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ < 0) throw Error(ErrorCode::NegativeIndex, "negative vertex count");
    for (const auto& e : edges_) {
        if (e.tail < 0 || e.head < 0) throw Error(ErrorCode::NegativeIndex, "negative vertex index");
        if (e.tail >= n_ || e.head >= n_) {
            throw Error(ErrorCode::InvalidArgument, "vertex index out of range");
        }
        if (e.tail == e.head) throw Error(ErrorCode::HasLoops, "loop at vertex " + std::to_string(e.tail));
    }
}

std::vector<int> Multigraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (const auto& e : edges_) {
        ++deg[static_cast<std::size_t>(e.tail)];
        ++deg[static_cast<std::size_t>(e.head)];
    }
    return deg;
}

namespace {

std::string_view strip(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view tok, long long& out) {
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

ParsedGraph parse_edge_list(std::string_view text) {
    std::vector<Edge> edges;
    int loops = 0;
    int max_index = -1;
    bool any = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;

        std::vector<std::string_view> tokens;
        while (!line.empty()) {
            const auto sp = line.find_first_of(" \t");
            tokens.push_back(line.substr(0, sp));
            line = (sp == std::string_view::npos) ? std::string_view{} : strip(line.substr(sp));
        }
        long long u = 0, v = 0;
        if (tokens.size() != 2 || !parse_int(tokens[0], u) || !parse_int(tokens[1], v)) {
            throw Error(ErrorCode::MalformedLine, "line " + std::to_string(line_no));
        }
        if (u < 0 || v < 0) throw Error(ErrorCode::NegativeIndex, "line " + std::to_string(line_no));
        if (u > (1 << 20) || v > (1 << 20)) {
            throw Error(ErrorCode::MalformedLine, "vertex index too large on line " + std::to_string(line_no));
        }
        any = true;
        max_index = std::max({max_index, static_cast<int>(u), static_cast<int>(v)});
        if (u == v) {
            ++loops;
        } else {
            edges.push_back({static_cast<int>(u), static_cast<int>(v)});
        }
    }
    if (!any) throw Error(ErrorCode::EmptyGraph, "no edges");
    return {Multigraph(max_index + 1, std::move(edges)), loops};
}

ParsedGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_edge_list(ss.str());
}

std::string to_edge_list(const Multigraph& g) {
    std::string out;
    for (const auto& e : g.edges()) {
        out += std::to_string(e.tail) + " " + std::to_string(e.head) + "\n";
    }
    return out;
}

Multigraph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Multigraph(n, std::move(edges));
}

Multigraph complete_bipartite(int a, int b) {
    std::vector<Edge> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
    return Multigraph(a + b, std::move(edges));
}

Multigraph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Multigraph(n, std::move(edges));
}

Multigraph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return Multigraph(n, std::move(edges));
}

std::vector<std::string> catalog_names() {
    return {"k3", "k4", "k5", "k33", "k34", "k35", "petersen", "k5_plus_pendant3", "two_triangles_bridge"};
}

Multigraph named_graph(std::string_view name) {
    if (name == "k3") return complete_graph(3);
    if (name == "k4") return complete_graph(4);
    if (name == "k5") return complete_graph(5);
    if (name == "k33") return complete_bipartite(3, 3);
    if (name == "k34") return complete_bipartite(3, 4);
    if (name == "k35") return complete_bipartite(3, 5);
    if (name == "petersen") {
        std::vector<Edge> edges;
        for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5});
        for (int i = 0; i < 5; ++i) edges.push_back({i, i + 5});
        for (int i = 0; i < 5; ++i) edges.push_back({5 + i, 5 + (i + 2) % 5});
        return Multigraph(10, std::move(edges));
    }
    if (name == "k5_plus_pendant3") {
        auto edges = complete_graph(5).edges();
        for (int i = 0; i < 3; ++i) edges.push_back({i, 5});
        return Multigraph(6, std::move(edges));
    }
    if (name == "two_triangles_bridge") {
        return Multigraph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
    }
    throw Error(ErrorCode::UnknownName, std::string(name));
}

VertexSubset normalize_subset(const Multigraph& g, VertexSubset w) {
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    for (int v : w) {
        if (v < 0 || v >= g.num_vertices()) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
    }
    return w;
}

VertexSubset complement(const Multigraph& g, const VertexSubset& w) {
    std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int v : w) in[static_cast<std::size_t>(v)] = 1;
    VertexSubset out;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!in[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

namespace {

// New label of every vertex after merging w into min(w).
std::vector<int> contraction_labels(const Multigraph& g, const VertexSubset& w) {
    const int n = g.num_vertices();
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : w) in[static_cast<std::size_t>(v)] = 1;
    const int rep = w.front();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (!in[static_cast<std::size_t>(v)] || v == rep) label[static_cast<std::size_t>(v)] = next++;
    }
    for (int v : w) label[static_cast<std::size_t>(v)] = label[static_cast<std::size_t>(rep)];
    return label;
}

}  // namespace

std::vector<int> contracted_edges(const Multigraph& g, const VertexSubset& w_in) {
    if (w_in.empty()) throw Error(ErrorCode::EmptySubset, "contraction set is empty");
    const auto w = normalize_subset(g, w_in);
    const auto label = contraction_labels(g, w);
    std::vector<int> kept;
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        if (label[static_cast<std::size_t>(ed.tail)] != label[static_cast<std::size_t>(ed.head)]) kept.push_back(e);
    }
    return kept;
}

Multigraph contract(const Multigraph& g, const VertexSubset& w_in) {
    if (w_in.empty()) throw Error(ErrorCode::EmptySubset, "contraction set is empty");
    const auto w = normalize_subset(g, w_in);
    const auto label = contraction_labels(g, w);
    std::vector<Edge> edges;
    for (int e : contracted_edges(g, w)) {
        const auto& ed = g.edge(e);
        edges.push_back({label[static_cast<std::size_t>(ed.tail)], label[static_cast<std::size_t>(ed.head)]});
    }
    return Multigraph(g.num_vertices() - static_cast<int>(w.size()) + 1, std::move(edges));
}

IncidenceMatrix incidence(const Multigraph& g) {
    IncidenceMatrix m = IncidenceMatrix::Zero(g.num_vertices(), g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        m(g.edge(e).tail, e) = -1;
        m(g.edge(e).head, e) = 1;
    }
    return m;
}

bool is_connected(const Multigraph& g) {
    const int n = g.num_vertices();
    if (n <= 1) return true;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    int components = n;
    for (const auto& e : g.edges()) {
        const int a = find(e.tail), b = find(e.head);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --components;
        }
    }
    return components == 1;
}

std::vector<int> bridges(const Multigraph& g) {
    const int n = g.num_vertices();
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
    for (int e = 0; e < g.num_edges(); ++e) {
        adj[static_cast<std::size_t>(g.edge(e).tail)].push_back({g.edge(e).head, e});
        adj[static_cast<std::size_t>(g.edge(e).head)].push_back({g.edge(e).tail, e});
    }
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<int> out;
    int timer = 0;
    // Iterative DFS; the parent is tracked by edge id so parallel edges count.
    struct Frame {
        int v;
        int via_edge;
        std::size_t next;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> stack{{root, -1, 0}};
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        while (!stack.empty()) {
            auto& fr = stack.back();
            const auto& nbrs = adj[static_cast<std::size_t>(fr.v)];
            if (fr.next < nbrs.size()) {
                const auto [u, e] = nbrs[fr.next++];
                if (e == fr.via_edge) continue;
                if (disc[static_cast<std::size_t>(u)] == -1) {
                    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
                    stack.push_back({u, e, 0});
                } else {
                    low[static_cast<std::size_t>(fr.v)] =
                        std::min(low[static_cast<std::size_t>(fr.v)], disc[static_cast<std::size_t>(u)]);
                }
            } else {
                const Frame done = fr;
                stack.pop_back();
                if (!stack.empty()) {
                    const int parent = stack.back().v;
                    low[static_cast<std::size_t>(parent)] =
                        std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(done.v)]);
                    if (low[static_cast<std::size_t>(done.v)] > disc[static_cast<std::size_t>(parent)]) {
                        out.push_back(done.via_edge);
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fqflow
