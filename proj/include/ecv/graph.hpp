#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "ecv/params.hpp"

namespace ecv {

// Simple undirected graph with incrementally maintained degrees, edge count
// and concurrent-vertex count. Value semantics; single writer per instance.
//
// Performance contract: toggle/degree/statistic reads are O(1) and the hot
// MCMC path has no bounds checks beyond the self-loop guard. recount-based
// validation lives in consistent_with_recount(), for tests.
class graph {
public:
    graph() = default;
    explicit graph(int n);

    int order() const { return n_; }
    int edge_count() const { return edge_count_; }
    int concurrent_count() const { return concurrent_count_; }
    int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
    bool has_edge(int i, int j) const { return adj_[idx(i, j)] != 0; }

    // Fraction of vertices outside the concurrent phase: 1 - t_c / N.
    double order_parameter() const {
        return 1.0 - static_cast<double>(concurrent_count_) / static_cast<double>(n_);
    }

    // Flips edge presence; all cached statistics updated in O(1).
    void toggle_edge(int i, int j);
    void set_edge(int i, int j, bool present);

    // Change in (t_e, t_c) from adding the focal edge to the graph with that
    // edge absent: (1, I(d_i = 1) + I(d_j = 1)) with degrees taken on y-.
    std::pair<int, int> change_score(int i, int j) const;

    // Endpoint classification on y with the focal edge forced absent.
    dyad_class classify_dyad(int i, int j) const;

    // Uniform-edge access for tie/no-tie proposals.
    std::pair<int, int> edge_at(int k) const { return edges_[static_cast<std::size_t>(k)]; }

    bool consistent_with_recount() const;

    friend bool operator==(const graph& a, const graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }
    void check_dyad(int i, int j) const;

    int n_ = 0;
    int edge_count_ = 0;
    int concurrent_count_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<int> degree_;
    std::vector<std::pair<int, int>> edges_;  // current edges, swap-erased
    std::vector<int> edge_pos_;               // dyad -> index into edges_, -1 if absent
};

// Edge-list text format: header "N <n>", then one "i j" pair per line,
// 0-indexed with i < j.
void write_edge_list(std::ostream& os, const graph& g);
graph read_edge_list(std::istream& is);

}  // namespace ecv
