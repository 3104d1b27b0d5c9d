#include "ecv/multiplicity.hpp"

#include <cmath>
#include <cstddef>

namespace ecv {

namespace {

constexpr double ln2 = 0.6931471805599453;

multiplicity_table make_tables(int n, bool parallel) {
    multiplicity_table t;
    t.n = n;
    const int w = n + 1;
    t.sparse_interface.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(w),
                              0.0);
    t.dense.resize(static_cast<std::size_t>(w));

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int n_s = 0; n_s <= n; ++n_s)
        for (int e = 0; e <= n; ++e)
            t.sparse_interface[static_cast<std::size_t>(n_s) * static_cast<std::size_t>(w) +
                               static_cast<std::size_t>(e)] =
                sparse_interface_count(e, n_s, n - n_s).log();

    // big columns dominate, so hand them out first
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i <= n; ++i) {
        const int n_d = n - i;
        t.dense[static_cast<std::size_t>(n_d)] = min_degree_two_log_column(n_d);
    }
    return t;
}

}  // namespace

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

log_number matching_count(int edges, int n) {
    if (edges < 0 || n < 0 || 2 * edges > n) return log_number::zero();
    return log_number::from_log(std::lgamma(n + 1.0) - std::lgamma(edges + 1.0) -
                                edges * ln2 - std::lgamma(n - 2 * edges + 1.0));
}

log_number sparse_interface_count(int edges, int n_sparse, int n_dense) {
    if (edges < 0 || n_sparse < 0 || n_dense < 0) return log_number::zero();
    if (n_dense == 0) return matching_count(edges, n_sparse);
    const int e_lo = std::max(0, 2 * edges - n_sparse);
    const int e_hi = std::min(edges, n_sparse);
    log_number total = log_number::zero();
    for (int e = e_lo; e <= e_hi; ++e) {
        // e cross edges, each from a distinct sparse vertex to any dense one;
        // the rest form a matching on the remaining sparse vertices
        log_number term = log_number::from_log(log_binomial(n_sparse, e) +
                                               e * std::log(double(n_dense)));
        term *= matching_count(edges - e, n_sparse - e);
        total += term;
    }
    return total;
}

log_number min_degree_two_count(int edges, int n) {
    if (edges < 0 || n < 0) return log_number::zero();
    const auto column = min_degree_two_log_column(n);
    if (edges >= static_cast<int>(column.size())) return log_number::zero();
    return log_number::from_log(column[static_cast<std::size_t>(edges)]);
}

multiplicity_table build_tables(int n) { return make_tables(n, true); }

multiplicity_table build_tables_serial(int n) { return make_tables(n, false); }

}  // namespace ecv
