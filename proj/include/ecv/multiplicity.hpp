#pragma once

#include <filesystem>
#include <vector>

#include "ecv/log_number.hpp"

namespace ecv {

// log of binomial(n, k) via lgamma
double log_binomial(int n, int k);

// Number of graphs on n labeled vertices with `edges` edges and max degree 1.
log_number matching_count(int edges, int n);

// Number of graphs with `edges` edges on n_sparse + n_dense labeled vertices
// where every sparse vertex has degree <= 1 and every edge has at least one
// sparse endpoint.  Dense-side degrees are unconstrained.
log_number sparse_interface_count(int edges, int n_sparse, int n_dense);

// Number of graphs on n labeled vertices with `edges` edges and min degree 2.
// Computed by exact integer inclusion-exclusion; see min_degree_two_log_column.
log_number min_degree_two_count(int edges, int n);

// Full column of min-degree-2 counts for a given order: entry [e] holds the
// log of the count at e edges (-inf where the count is zero), e in
// [0, n*(n-1)/2].  The inclusion-exclusion sum cancels catastrophically in
// floating point, so the accumulation is done in exact integers and only the
// final counts are taken to log space.
std::vector<double> min_degree_two_log_column(int n);

// Precomputed multiplicities for all strata of an order-n model.
struct multiplicity_table {
    int n = 0;
    // row n_s, entry e: sparse_interface_count(e, n_s, n - n_s)
    std::vector<double> sparse_interface;
    // dense[n_d][e]: min-degree-2 count on n_d vertices with e edges
    std::vector<std::vector<double>> dense;

    double sparse_interface_log(int n_sparse, int edges) const {
        return sparse_interface[static_cast<std::size_t>(n_sparse) *
                                    static_cast<std::size_t>(n + 1) +
                                static_cast<std::size_t>(edges)];
    }
    double dense_log(int n_dense, int edges) const {
        return dense[static_cast<std::size_t>(n_dense)][static_cast<std::size_t>(edges)];
    }
};

multiplicity_table build_tables(int n);         // parallel over columns
multiplicity_table build_tables_serial(int n);  // reference implementation

// Binary cache with a checksum and a recompute spot check on load.
void save_tables(const multiplicity_table& table, const std::filesystem::path& file);
multiplicity_table load_tables(const std::filesystem::path& file);

// Loads <dir>/tables_n<order>.bin if present, otherwise builds and saves it.
multiplicity_table load_or_build(int n, const std::filesystem::path& dir,
                                 bool parallel = true);

}  // namespace ecv
