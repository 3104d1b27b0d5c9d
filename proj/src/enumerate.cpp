#include "ecv/enumerate.hpp"

#include <bit>
#include <stdexcept>

namespace ecv {

namespace {

int dyad_count(int n) { return n * (n - 1) / 2; }

void check_order(int n) {
    if (n < 0 || dyad_count(n) > 28)
        throw std::invalid_argument("enumeration supports graph orders with C(n,2) <= 28");
}

}  // namespace

std::vector<mask_stats> enumerate_graph_stats(int n) {
    check_order(n);
    const int d = dyad_count(n);
    std::vector<std::pair<int, int>> dyads;
    dyads.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) dyads.emplace_back(i, j);

    std::vector<mask_stats> out(std::size_t{1} << d);
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (std::uint32_t mask = 0; mask < out.size(); ++mask) {
        for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = 0;
        for (int b = 0; b < d; ++b)
            if (mask >> b & 1u) {
                ++deg[static_cast<std::size_t>(dyads[static_cast<std::size_t>(b)].first)];
                ++deg[static_cast<std::size_t>(dyads[static_cast<std::size_t>(b)].second)];
            }
        int conc = 0;
        for (int v = 0; v < n; ++v)
            if (deg[static_cast<std::size_t>(v)] > 1) ++conc;
        out[mask] = {std::popcount(mask), conc};
    }
    return out;
}

graph graph_from_mask(int n, std::uint32_t mask) {
    check_order(n);
    graph g(n);
    int b = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++b)
            if (mask >> b & 1u) g.set_edge(i, j, true);
    return g;
}

std::uint64_t brute_force_count(int n, int edges,
                                const std::function<bool(const graph&)>& pred) {
    check_order(n);
    const int d = dyad_count(n);
    std::uint64_t count = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << d); ++mask) {
        if (std::popcount(mask) != edges) continue;
        if (pred(graph_from_mask(n, mask))) ++count;
    }
    return count;
}

bool is_matching(const graph& g) {
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) > 1) return false;
    return true;
}

bool has_min_degree_two(const graph& g) {
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) < 2) return false;
    return true;
}

bool in_constructed_family(const graph& g) {
    for (int v = 0; v < g.order(); ++v) {
        if (g.degree(v) < 2) continue;
        int dense_neighbors = 0;
        for (int u = 0; u < g.order(); ++u)
            if (u != v && g.degree(u) >= 2 && g.has_edge(u, v)) ++dense_neighbors;
        if (dense_neighbors < 2) return false;
    }
    return true;
}

std::function<bool(const graph&)> sparse_interface_predicate(int n_sparse) {
    return [n_sparse](const graph& g) {
        for (int v = 0; v < n_sparse; ++v)
            if (g.degree(v) > 1) return false;
        // no edge may lie entirely inside the dense block
        for (int i = n_sparse; i < g.order(); ++i)
            for (int j = i + 1; j < g.order(); ++j)
                if (g.has_edge(i, j)) return false;
        return true;
    };
}

}  // namespace ecv
