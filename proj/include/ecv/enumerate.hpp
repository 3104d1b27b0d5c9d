#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ecv/graph.hpp"

namespace ecv {

// Exhaustive-enumeration oracles. Everything here walks all 2^C(n,2) edge
// subsets, so it is restricted to C(n,2) <= 28. Production code never calls
// these; they back the verify command and the test suites.

inline int max_enumerable_order() { return 8; }  // C(8,2) = 28

struct mask_stats {
    int edges;
    int concurrent;
};

// (t_e, t_c) for every edge subset of the complete graph on n vertices,
// indexed by bitmask over dyads in row-major (i<j) order.
std::vector<mask_stats> enumerate_graph_stats(int n);

graph graph_from_mask(int n, std::uint32_t mask);

// Exact number of labeled graphs on n vertices with the given edge count
// satisfying the predicate.
std::uint64_t brute_force_count(int n, int edges, const std::function<bool(const graph&)>& pred);

// Common predicates.
bool is_matching(const graph& g);          // all degrees <= 1
bool has_min_degree_two(const graph& g);   // all degrees >= 2
// Every sparse vertex (index < n_sparse) has degree <= 1 and every edge
// touches at least one sparse vertex; dense vertices are unconstrained.
std::function<bool(const graph&)> sparse_interface_predicate(int n_sparse);

// Membership in the family the stratified approximation actually counts:
// every concurrent vertex keeps degree >= 2 among concurrent vertices alone.
bool in_constructed_family(const graph& g);

}  // namespace ecv
