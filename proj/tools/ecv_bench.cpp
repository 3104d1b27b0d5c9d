#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "ecv/mcmc.hpp"
#include "ecv/multiplicity.hpp"
#include "ecv/partition.hpp"
#include "ecv/phase.hpp"

namespace {

using namespace ecv;

double seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.4f s %10.4f s   x%.2f\n", name, serial, parallel,
                serial / parallel);
}

int mismatch(const char* what) {
    std::fprintf(stderr, "mismatch: serial and parallel %s disagree\n", what);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP timings for the model kernels"};
    int n = 60;
    bool quick = false;
    app.add_option("--n", n, "graph order")->check(CLI::Range(8, 200));
    app.add_flag("--quick", quick, "smaller workloads for smoke testing");
    CLI11_PARSE(app, argc, argv);

    std::printf("order %d, %d OpenMP thread(s)\n", n, omp_get_max_threads());
    std::printf("%-28s %12s %12s\n", "kernel", "serial", "parallel");

    multiplicity_table serial_tables, tables;
    const double build_s = seconds([&] { serial_tables = build_tables_serial(n); });
    const double build_p = seconds([&] { tables = build_tables(n); });
    row("multiplicity tables", build_s, build_p);
    if (serial_tables.sparse_interface != tables.sparse_interface ||
        serial_tables.dense != tables.dense)
        return mismatch("multiplicity tables");

    const int temps = quick ? 8 : 48;
    std::vector<physical_params> grid;
    for (int i = 0; i < temps; ++i)
        grid.push_back({0.3 + 0.05 * i, 3.373});
    std::vector<double> sweep_s(grid.size()), sweep_p(grid.size());
    const double curve_s = seconds([&] {
        for (std::size_t i = 0; i < grid.size(); ++i)
            sweep_s[i] = log_partition_serial(tables, to_theta(grid[i])).log_z;
    });
    const double curve_p = seconds([&] {
        for (std::size_t i = 0; i < grid.size(); ++i)
            sweep_p[i] = log_partition(tables, to_theta(grid[i])).log_z;
    });
    row("free-energy sweep", curve_s, curve_p);
    // fixed-order reductions: identical bits, not just close
    if (sweep_s != sweep_p) return mismatch("partition sums");

    experiment_config cfg;
    cfg.n = n;
    cfg.phi_concurrent = 3.373;
    cfg.critical_temperature = 1.0;
    cfg.ratios = {0.4, 0.8, 1.2};
    cfg.reps = quick ? 8 : 32;
    cfg.burn_in = quick ? 20000 : 100000;
    cfg.seed = 20260814;
    std::vector<experiment_point> chains_p, chains_s;
    const double chain_p = seconds([&] { chains_p = mean_order_parameter_experiment(cfg); });
    double chain_s;
    {
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        chain_s = seconds([&] { chains_s = mean_order_parameter_experiment(cfg); });
        omp_set_num_threads(saved);
    }
    row("chain ensemble", chain_s, chain_p);
    for (std::size_t i = 0; i < chains_p.size(); ++i)
        if (chains_p[i].mean_m != chains_s[i].mean_m)
            return mismatch("chain ensembles");

    std::printf("serial and parallel results agree bitwise\n");
    return 0;
}
