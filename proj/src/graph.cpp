#include "ecv/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ecv {

graph::graph(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("graph order must be positive");
    adj_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    degree_.assign(static_cast<std::size_t>(n), 0);
    edge_pos_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
}

void graph::check_dyad(int i, int j) const {
    if (i == j) throw std::invalid_argument("self-loops are not representable");
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("vertex out of range");
}

void graph::toggle_edge(int i, int j) {
    check_dyad(i, j);
    if (i > j) std::swap(i, j);
    const std::size_t ij = idx(i, j), ji = idx(j, i);
    if (adj_[ij]) {
        adj_[ij] = adj_[ji] = 0;
        const int pos = edge_pos_[ij];
        const auto last = edges_.back();
        edges_[static_cast<std::size_t>(pos)] = last;
        edge_pos_[idx(last.first, last.second)] = pos;
        edges_.pop_back();
        edge_pos_[ij] = -1;
        --edge_count_;
        // a vertex leaves the concurrent phase when its degree drops 2 -> 1
        if (degree_[static_cast<std::size_t>(i)]-- == 2) --concurrent_count_;
        if (degree_[static_cast<std::size_t>(j)]-- == 2) --concurrent_count_;
    } else {
        adj_[ij] = adj_[ji] = 1;
        edge_pos_[ij] = static_cast<int>(edges_.size());
        edges_.emplace_back(i, j);
        ++edge_count_;
        if (degree_[static_cast<std::size_t>(i)]++ == 1) ++concurrent_count_;
        if (degree_[static_cast<std::size_t>(j)]++ == 1) ++concurrent_count_;
    }
}

void graph::set_edge(int i, int j, bool present) {
    check_dyad(i, j);
    if (has_edge(i, j) != present) toggle_edge(i, j);
}

std::pair<int, int> graph::change_score(int i, int j) const {
    check_dyad(i, j);
    const int off = has_edge(i, j) ? 1 : 0;
    const int di = degree_[static_cast<std::size_t>(i)] - off;
    const int dj = degree_[static_cast<std::size_t>(j)] - off;
    return {1, (di == 1 ? 1 : 0) + (dj == 1 ? 1 : 0)};
}

dyad_class graph::classify_dyad(int i, int j) const {
    check_dyad(i, j);
    const int off = has_edge(i, j) ? 1 : 0;
    int di = degree_[static_cast<std::size_t>(i)] - off;
    int dj = degree_[static_cast<std::size_t>(j)] - off;
    if (di > dj) std::swap(di, dj);
    // di <= dj, categories: 0 isolate, 1 pendant, >=2 concurrent
    if (di == 0) {
        if (dj == 0) return dyad_class::II;
        if (dj == 1) return dyad_class::PI;
        return dyad_class::IC;
    }
    if (di == 1) {
        if (dj == 1) return dyad_class::PP;
        return dyad_class::PC;
    }
    return dyad_class::CC;
}

bool graph::consistent_with_recount() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    int edges = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (adj_[idx(i, j)]) {
                ++edges;
                ++deg[static_cast<std::size_t>(i)];
                ++deg[static_cast<std::size_t>(j)];
            }
    int concurrent = 0;
    for (int v = 0; v < n_; ++v) {
        if (deg[static_cast<std::size_t>(v)] != degree_[static_cast<std::size_t>(v)]) return false;
        if (deg[static_cast<std::size_t>(v)] > 1) ++concurrent;
    }
    if (edges != edge_count_ || concurrent != concurrent_count_) return false;
    if (static_cast<std::size_t>(edges) != edges_.size()) return false;
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        const auto [i, j] = edges_[k];
        if (!adj_[idx(i, j)] || edge_pos_[idx(i, j)] != static_cast<int>(k)) return false;
    }
    return true;
}

void write_edge_list(std::ostream& os, const graph& g) {
    os << "N " << g.order() << "\n";
    for (int i = 0; i < g.order(); ++i)
        for (int j = i + 1; j < g.order(); ++j)
            if (g.has_edge(i, j)) os << i << " " << j << "\n";
}

graph read_edge_list(std::istream& is) {
    std::string tag;
    int n = 0;
    if (!(is >> tag >> n) || tag != "N")
        throw std::runtime_error("edge list must start with a 'N <order>' header");
    graph g(n);
    int i = 0, j = 0;
    while (is >> i >> j) {
        if (i >= j) throw std::runtime_error("edge list pairs must satisfy i < j");
        g.set_edge(i, j, true);
    }
    return g;
}

}  // namespace ecv
