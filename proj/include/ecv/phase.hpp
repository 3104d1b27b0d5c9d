#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ecv/multiplicity.hpp"
#include "ecv/params.hpp"

namespace ecv {

struct curve_point {
    int n_sparse = 0;
    double m = 0.0;
    double free_energy = 0.0;  // +inf for zero-mass strata
    double entropy = 0.0;      // NaN there
    double mean_energy = 0.0;  // NaN there
};

struct free_energy_curve {
    int n = 0;
    double temperature = 0.0;
    double phi_concurrent = 0.0;
    std::vector<curve_point> points;  // n+1 entries, m ascending
};

free_energy_curve compute_free_energy_curve(const multiplicity_table& tables,
                                            physical_params pp);

struct curve_minimum {
    int n_sparse = 0;
    double m = 0.0;
    double free_energy = 0.0;
};

// Discrete local minima over the finite-F points.  Zero-mass gaps are skipped:
// a point is compared against its nearest finite neighbors, one-sided at the
// curve ends, and a flat plateau counts once at its lowest-m point.  Sorted by
// free energy ascending (front = stable phase).  Throws if no point is finite.
std::vector<curve_minimum> local_minima(const free_energy_curve& curve);

struct critical_search {
    double t_lo = 0.05;
    double t_hi = 5.0;
    double tolerance = 1e-3;
    int scan_points = 65;  // geometric pre-scan used to bracket the transition
};

// Supremum temperature at which the curve has two coexisting local minima,
// located by bisection after a geometric scan; nullopt if coexistence never
// appears in the bracket.
std::optional<double> critical_temperature(const multiplicity_table& tables,
                                           double phi_concurrent,
                                           critical_search opts = {});

struct phase_point {
    double temperature = 0.0;
    double ratio = 0.0;                  // T / T_c
    std::vector<curve_minimum> minima;   // stability order
    double barrier = 0.0;                // crest F above the metastable minimum; NaN if single
};

struct phase_diagram {
    int n = 0;
    double phi_concurrent = 0.0;
    double critical_temperature = 0.0;
    double coexistence_ratio = 0.0;            // least grid ratio showing two minima
    std::pair<double, double> flip_interval;   // grid ratios bracketing the stable-branch switch
    std::vector<phase_point> points;
};

std::vector<double> default_ratio_grid();  // 0.25 .. 1.30 step 0.05

// Traces minima over ratio * T_c; throws if no critical temperature exists.
phase_diagram map_phase_diagram(const multiplicity_table& tables, double phi_concurrent,
                                const std::vector<double>& ratio_grid = default_ratio_grid(),
                                critical_search opts = {});

}  // namespace ecv
