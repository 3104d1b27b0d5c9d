#include "ecv/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ecv/partition.hpp"

namespace ecv {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

bool has_coexistence(const multiplicity_table& tables, double phi_c, double t) {
    return local_minima(compute_free_energy_curve(tables, {t, phi_c})).size() >= 2;
}

// crest between the two lowest minima, measured above the higher one
double barrier_above_metastable(const free_energy_curve& curve,
                                const std::vector<curve_minimum>& minima) {
    if (minima.size() < 2) return nan;
    int lo = std::min(minima[0].n_sparse, minima[1].n_sparse);
    int hi = std::max(minima[0].n_sparse, minima[1].n_sparse);
    double crest = -inf;
    for (int i = lo + 1; i < hi; ++i) {
        const double f = curve.points[static_cast<std::size_t>(i)].free_energy;
        if (std::isfinite(f)) crest = std::max(crest, f);
    }
    return crest - minima[1].free_energy;
}

}  // namespace

free_energy_curve compute_free_energy_curve(const multiplicity_table& tables,
                                            physical_params pp) {
    free_energy_curve out;
    out.n = tables.n;
    out.temperature = pp.temperature;
    out.phi_concurrent = pp.phi_concurrent;
    out.points.resize(static_cast<std::size_t>(tables.n) + 1);

    const model_params p = to_theta(pp);
#pragma omp parallel for schedule(static)
    for (int n_s = 0; n_s <= tables.n; ++n_s) {
        const auto s = stratum_log_partition(tables, p, n_s);
        auto& pt = out.points[static_cast<std::size_t>(n_s)];
        pt.n_sparse = n_s;
        pt.m = static_cast<double>(n_s) / tables.n;
        if (s.log_z == -inf) {
            pt.free_energy = inf;
            pt.entropy = nan;
            pt.mean_energy = nan;
        } else {
            pt.free_energy = -pp.temperature * s.log_z;
            pt.mean_energy = s.mean_energy;
            pt.entropy = (s.mean_energy - pt.free_energy) / pp.temperature;
        }
    }
    return out;
}

std::vector<curve_minimum> local_minima(const free_energy_curve& curve) {
    std::vector<int> finite;
    for (const auto& pt : curve.points)
        if (std::isfinite(pt.free_energy)) finite.push_back(pt.n_sparse);
    if (finite.empty()) throw std::domain_error("free-energy curve has no finite point");

    const auto f = [&](std::size_t k) {
        return curve.points[static_cast<std::size_t>(finite[k])].free_energy;
    };
    std::vector<curve_minimum> out;
    std::size_t k = 0;
    while (k < finite.size()) {
        std::size_t j = k;
        while (j + 1 < finite.size() && f(j + 1) == f(k)) ++j;  // plateau
        const double left = k > 0 ? f(k - 1) : inf;
        const double right = j + 1 < finite.size() ? f(j + 1) : inf;
        if (f(k) < left && f(k) < right) {
            const auto& pt = curve.points[static_cast<std::size_t>(finite[k])];
            out.push_back({pt.n_sparse, pt.m, pt.free_energy});
        }
        k = j + 1;
    }
    std::sort(out.begin(), out.end(), [](const curve_minimum& a, const curve_minimum& b) {
        return a.free_energy != b.free_energy ? a.free_energy < b.free_energy
                                              : a.m < b.m;
    });
    return out;
}

std::optional<double> critical_temperature(const multiplicity_table& tables,
                                           double phi_concurrent, critical_search opts) {
    if (!(opts.t_lo > 0) || !(opts.t_hi > opts.t_lo) || opts.scan_points < 2)
        throw std::invalid_argument("bad critical-temperature search bracket");

    // geometric scan to find any coexistence temperature and the first
    // non-coexistence point above it
    const int k = opts.scan_points;
    std::vector<double> grid(static_cast<std::size_t>(k));
    const double step = std::pow(opts.t_hi / opts.t_lo, 1.0 / (k - 1));
    for (int i = 0; i < k; ++i) grid[static_cast<std::size_t>(i)] = opts.t_lo * std::pow(step, i);
    std::vector<char> two(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < k; ++i)
        two[static_cast<std::size_t>(i)] =
            has_coexistence(tables, phi_concurrent, grid[static_cast<std::size_t>(i)]);

    int last_true = -1;
    for (int i = k - 1; i >= 0; --i)
        if (two[static_cast<std::size_t>(i)]) {
            last_true = i;
            break;
        }
    if (last_true < 0) return std::nullopt;

    double lo = grid[static_cast<std::size_t>(last_true)];
    double hi;
    if (last_true + 1 < k) {
        hi = grid[static_cast<std::size_t>(last_true) + 1];
    } else {
        // coexistence persists at the bracket top: expand geometrically
        hi = opts.t_hi;
        do {
            lo = hi;
            hi *= 2.0;
            if (hi > 64.0 * opts.t_hi) return std::nullopt;
        } while (has_coexistence(tables, phi_concurrent, hi));
    }

    while (hi - lo > opts.tolerance) {
        const double mid = 0.5 * (lo + hi);
        (has_coexistence(tables, phi_concurrent, mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> default_ratio_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 21; ++i) g.push_back(0.25 + 0.05 * i);
    return g;
}

phase_diagram map_phase_diagram(const multiplicity_table& tables, double phi_concurrent,
                                const std::vector<double>& ratio_grid,
                                critical_search opts) {
    if (ratio_grid.empty()) throw std::invalid_argument("empty ratio grid");
    const auto tc = critical_temperature(tables, phi_concurrent, opts);
    if (!tc) throw std::runtime_error("no coexistence region in the search bracket");

    phase_diagram out;
    out.n = tables.n;
    out.phi_concurrent = phi_concurrent;
    out.critical_temperature = *tc;
    out.points.resize(ratio_grid.size());

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(ratio_grid.size()); ++i) {
        const double ratio = ratio_grid[static_cast<std::size_t>(i)];
        const double t = ratio * *tc;
        const auto curve = compute_free_energy_curve(tables, {t, phi_concurrent});
        auto minima = local_minima(curve);
        auto& pt = out.points[static_cast<std::size_t>(i)];
        pt.temperature = t;
        pt.ratio = ratio;
        pt.barrier = barrier_above_metastable(curve, minima);
        pt.minima = std::move(minima);
    }

    out.coexistence_ratio = nan;
    for (const auto& pt : out.points)
        if (pt.minima.size() >= 2) {
            out.coexistence_ratio = pt.ratio;
            break;
        }

    // stable branch switches from sparse (m > 1/2) to dense as T rises
    int last_sparse = -1;
    for (int i = 0; i < static_cast<int>(out.points.size()); ++i)
        if (out.points[static_cast<std::size_t>(i)].minima.front().m > 0.5) last_sparse = i;
    if (last_sparse >= 0 && last_sparse + 1 < static_cast<int>(out.points.size()))
        out.flip_interval = {out.points[static_cast<std::size_t>(last_sparse)].ratio,
                             out.points[static_cast<std::size_t>(last_sparse) + 1].ratio};
    else
        out.flip_interval = {nan, nan};
    return out;
}

}  // namespace ecv
