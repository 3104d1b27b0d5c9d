#include "ecv/partition.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ecv/enumerate.hpp"

namespace ecv {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// log-sum-exp plus the conditional mean of the index, over logs[i] at
// index values first + i
struct weighted_sum {
    double log_total = -inf;
    double mean_index = nan;
};

weighted_sum reduce_indexed(const std::vector<double>& logs, int first) {
    weighted_sum r;
    r.log_total = log_sum_exp(logs);
    if (r.log_total == -inf) return r;
    double acc = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i)
        if (logs[i] != -inf)
            acc += (first + static_cast<double>(i)) * std::exp(logs[i] - r.log_total);
    r.mean_index = acc;
    return r;
}

partition_result assemble(const multiplicity_table& tables, model_params p,
                          bool parallel) {
    partition_result out;
    out.n = tables.n;
    out.params = p;
    out.strata.resize(static_cast<std::size_t>(tables.n) + 1);

#pragma omp parallel for schedule(static) if (parallel)
    for (int n_s = 0; n_s <= tables.n; ++n_s)
        out.strata[static_cast<std::size_t>(n_s)] =
            stratum_log_partition(tables, p, n_s);

    std::vector<double> logs(out.strata.size());
    for (std::size_t i = 0; i < out.strata.size(); ++i) logs[i] = out.strata[i].log_z;
    out.log_z = log_sum_exp(logs);
    return out;
}

}  // namespace

stratum_result stratum_log_partition(const multiplicity_table& tables, model_params p,
                                     int n_sparse) {
    if (n_sparse < 0 || n_sparse > tables.n)
        throw std::out_of_range("sparse-phase count outside 0..n");
    const int n = tables.n;
    const int n_dense = n - n_sparse;

    stratum_result r;
    r.n_sparse = n_sparse;

    // interface edges: each consumes a distinct sparse vertex
    std::vector<double> ls(static_cast<std::size_t>(n_sparse) + 1);
    for (int e = 0; e <= n_sparse; ++e)
        ls[static_cast<std::size_t>(e)] =
            p.theta_edge * e + tables.sparse_interface_log(n_sparse, e);
    const weighted_sum sparse = reduce_indexed(ls, 0);

    // dense-dense edges, from the minimum the dense side could need upward;
    // the stored counts are already zero below true feasibility
    const auto& col = tables.dense[static_cast<std::size_t>(n_dense)];
    const int e_lo = n_dense;  // max(n - n_sparse, 0)
    std::vector<double> ld;
    ld.reserve(col.size());
    for (std::size_t e = static_cast<std::size_t>(e_lo); e < col.size(); ++e)
        ld.push_back(p.theta_edge * static_cast<double>(e) + col[e]);
    if (ld.empty()) ld.push_back(-inf);  // 1 or 2 dense vertices: no feasible range
    const weighted_sum dense = reduce_indexed(ld, e_lo);

    if (sparse.log_total == -inf || dense.log_total == -inf) {
        r.log_z = -inf;
        r.mean_edges = nan;
        r.mean_energy = nan;
        return r;
    }
    r.log_z = log_binomial(n, n_sparse) + p.theta_concurrent * n_dense +
              sparse.log_total + dense.log_total;
    r.mean_edges = sparse.mean_index + dense.mean_index;
    r.mean_energy = p.theta_edge != 0.0
                        ? r.mean_edges + (p.theta_concurrent / p.theta_edge) * n_dense
                        : nan;
    return r;
}

partition_result log_partition(const multiplicity_table& tables, model_params p) {
    return assemble(tables, p, true);
}

partition_result log_partition_serial(const multiplicity_table& tables, model_params p) {
    return assemble(tables, p, false);
}

int stratum_index(double m, int n) {
    const double x = m * n;
    const double r = std::round(x);
    if (std::fabs(x - r) > 1e-6 || r < 0 || r > n)
        throw std::invalid_argument("order parameter is not on the 1/n grid");
    return static_cast<int>(r);
}

double conditional_free_energy(const multiplicity_table& tables, physical_params pp,
                               double m) {
    const auto s = stratum_log_partition(tables, to_theta(pp), stratum_index(m, tables.n));
    return s.log_z == -inf ? inf : -pp.temperature * s.log_z;
}

double conditional_entropy(const multiplicity_table& tables, physical_params pp,
                           double m) {
    const auto s = stratum_log_partition(tables, to_theta(pp), stratum_index(m, tables.n));
    if (s.log_z == -inf)
        throw std::domain_error("entropy of a zero-mass stratum");
    const double f = -pp.temperature * s.log_z;
    return (s.mean_energy - f) / pp.temperature;
}

double stratum_entropy(const multiplicity_table& tables, model_params p, int n_sparse) {
    const auto s = stratum_log_partition(tables, p, n_sparse);
    if (s.log_z == -inf)
        throw std::domain_error("entropy of a zero-mass stratum");
    return s.log_z - p.theta_edge * s.mean_edges -
           p.theta_concurrent * (tables.n - n_sparse);
}

exact_partition_result exact_log_partition(model_params p, int n) {
    if (n < 1 || n > max_exact_order())
        throw std::invalid_argument("exact partition function is limited to order 6");
    const auto stats = enumerate_graph_stats(n);
    std::vector<std::vector<double>> by_conc(static_cast<std::size_t>(n) + 1);
    for (const auto& s : stats)
        by_conc[static_cast<std::size_t>(s.concurrent)].push_back(
            p.theta_edge * s.edges + p.theta_concurrent * s.concurrent);

    exact_partition_result out;
    out.n = n;
    out.stratum_log_z.resize(static_cast<std::size_t>(n) + 1);
    for (std::size_t c = 0; c <= static_cast<std::size_t>(n); ++c)
        out.stratum_log_z[c] = log_sum_exp(by_conc[c]);
    out.log_z = log_sum_exp(out.stratum_log_z);
    return out;
}

}  // namespace ecv
