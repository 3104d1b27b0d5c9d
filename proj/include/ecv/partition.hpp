#pragma once

#include <vector>

#include "ecv/multiplicity.hpp"
#include "ecv/params.hpp"

namespace ecv {

// One stratum of the order-parameter decomposition: the graphs whose sparse
// phase (degree <= 1 vertices) has exactly n_sparse members, built so that
// every dense vertex keeps degree >= 2 on dense-dense edges alone.  That
// construction cannot populate strata with 1 or 2 dense vertices, which is
// where the approximation undercounts.
struct stratum_result {
    int n_sparse = 0;
    double log_z = 0.0;       // -inf for unpopulated strata
    double mean_edges = 0.0;  // conditional mean edge count; NaN if no mass
    double mean_energy = 0.0; // mean_edges + phi_c * n_dense; NaN at theta_edge == 0
};

struct partition_result {
    int n = 0;
    model_params params;
    std::vector<stratum_result> strata;  // n_sparse = 0..n
    double log_z = 0.0;
};

stratum_result stratum_log_partition(const multiplicity_table& tables, model_params p,
                                     int n_sparse);
partition_result log_partition(const multiplicity_table& tables, model_params p);
partition_result log_partition_serial(const multiplicity_table& tables, model_params p);

// Maps an order-parameter value to its stratum index; throws if m*n is not
// within 1e-6 of an integer in [0, n].
int stratum_index(double m, int n);

// -T log Z(stratum at order parameter m); +infinity where the stratum is empty
double conditional_free_energy(const multiplicity_table& tables, physical_params pp,
                               double m);

// Shannon entropy of the conditional distribution, computed as (U - F)/T.
// Throws on zero-mass strata.
double conditional_entropy(const multiplicity_table& tables, physical_params pp,
                           double m);

// Same entropy in the natural parameterization, log Z - theta . <t>, which
// stays defined at theta = 0.
double stratum_entropy(const multiplicity_table& tables, model_params p, int n_sparse);

constexpr int max_exact_order() { return 6; }

// Exhaustive-enumeration oracle, stratified by the concurrent-vertex count.
struct exact_partition_result {
    int n = 0;
    std::vector<double> stratum_log_z;  // index = concurrent-vertex count 0..n
    double log_z = 0.0;
};
exact_partition_result exact_log_partition(model_params p, int n);

}  // namespace ecv
