#include "ecv/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ecv/enumerate.hpp"
#include "ecv/multiplicity.hpp"
#include "ecv/partition.hpp"

namespace ecv {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct tracker {
    bool pass = true;
    double max_dev = 0.0;
    std::string first_failure;

    void check(double deviation, double tolerance, const std::string& where) {
        if (std::isnan(deviation)) deviation = inf;
        max_dev = std::max(max_dev, deviation);
        if (deviation > tolerance && pass) {
            pass = false;
            first_failure = where;
        }
    }
};

// exact-integer agreement between a log-domain count and a brute-force count
void check_count(tracker& t, double log_count, std::uint64_t expect,
                 const std::string& where) {
    if (expect == 0) {
        t.check(log_count == -inf ? 0.0 : inf, 0.5, where);
        return;
    }
    const double val = std::exp(log_count);
    const double rel = std::fabs(val - static_cast<double>(expect)) /
                       static_cast<double>(expect);
    const bool integer_exact =
        val < 9e15 && std::llround(val) == static_cast<long long>(expect);
    t.check(integer_exact ? rel : std::max(rel, 1.0), 1e-9, where);
}

std::string spot(const char* what, int n, int a, int b) {
    std::ostringstream os;
    os << what << " n=" << n << " (" << a << "," << b << ")";
    return os.str();
}

const double theta_edge_grid[] = {-4.0, -3.0, -2.0, -1.0, 0.0};
const double theta_conc_grid[] = {-6.0, -4.5, -3.0, -1.5, 0.0};

}  // namespace

suite_result verify_counting(int n_max) {
    if (n_max < 1 || n_max > 7)
        throw std::invalid_argument("counting oracle covers orders 1..7");
    tracker t;
    for (int n = 1; n <= n_max; ++n) {
        const int dyads = n * (n - 1) / 2;
        const auto dense_col = min_degree_two_log_column(n);
        for (int e = 0; e <= dyads; ++e) {
            check_count(t, matching_count(e, n).log(),
                        brute_force_count(n, e, is_matching), spot("matching", n, e, 0));
            check_count(t, dense_col[static_cast<std::size_t>(e)],
                        brute_force_count(n, e, has_min_degree_two),
                        spot("min-degree-2", n, e, 0));
            for (int ns = 0; ns <= n; ++ns)
                check_count(t, sparse_interface_count(e, ns, n - ns).log(),
                            brute_force_count(n, e, sparse_interface_predicate(ns)),
                            spot("interface", n, e, ns));
        }
    }
    std::ostringstream detail;
    detail << "orders 1.." << n_max
           << ", every feasible edge count, exact integer equality";
    if (!t.pass) detail << "; first failure at " << t.first_failure;
    return {"counting-oracle", t.pass, t.max_dev, detail.str()};
}

suite_result verify_undercount(int n_max) {
    if (n_max < 2 || n_max > max_exact_order())
        throw std::invalid_argument("undercount suite covers orders 2..6");
    tracker t;
    for (int n = 2; n <= n_max; ++n) {
        const auto tables = build_tables(n);
        for (double te : theta_edge_grid)
            for (double tc : theta_conc_grid) {
                const model_params p{te, tc};
                const auto exact = exact_log_partition(p, n);
                const auto approx = log_partition(tables, p);
                for (int conc = 0; conc <= n; ++conc) {
                    const double a =
                        approx.strata[static_cast<std::size_t>(n - conc)].log_z;
                    const double x =
                        exact.stratum_log_z[static_cast<std::size_t>(conc)];
                    // undercount: approximate mass can never exceed the truth
                    const double gap = a == -inf ? 0.0 : a - x;
                    t.check(std::max(gap, 0.0), 1e-9,
                            spot("stratum overcount", n, conc, 0));
                    if (conc == 0)
                        t.check(std::fabs(a - x), 1e-9, spot("all-sparse stratum", n, 0, 0));
                }
                t.check(std::max(approx.log_z - exact.log_z, 0.0), 1e-9,
                        spot("total overcount", n, 0, 0));
            }
    }
    std::ostringstream detail;
    detail << "orders 2.." << n_max
           << ", 5x5 theta grid in [-4,0]x[-6,0]; approximate <= exact with "
              "equality on the all-sparse stratum";
    if (!t.pass) detail << "; first failure at " << t.first_failure;
    return {"partition-undercount", t.pass, t.max_dev, detail.str()};
}

suite_result verify_entropy_identity(int n_max) {
    if (n_max < 2 || n_max > 5)
        throw std::invalid_argument("entropy suite covers orders 2..5");
    const double te_grid[] = {0.0, -0.5, -1.0, -2.0};
    const double tc_grid[] = {0.0, -1.0, -3.0};
    tracker t;
    for (int n = 2; n <= n_max; ++n) {
        const auto tables = build_tables(n);
        const auto stats = enumerate_graph_stats(n);
        std::vector<char> member(stats.size());
        for (std::uint32_t mask = 0; mask < stats.size(); ++mask)
            member[mask] = in_constructed_family(graph_from_mask(n, mask));

        for (double te : te_grid)
            for (double tc : tc_grid) {
                const model_params p{te, tc};
                for (int n_s = 0; n_s <= n; ++n_s) {
                    const int conc = n - n_s;
                    std::vector<double> lw;
                    for (std::uint32_t mask = 0; mask < stats.size(); ++mask)
                        if (member[mask] && stats[mask].concurrent == conc)
                            lw.push_back(te * stats[mask].edges + tc * conc);
                    const auto stratum = stratum_log_partition(tables, p, n_s);
                    if (lw.empty()) {
                        t.check(stratum.log_z == -inf ? 0.0 : inf, 0.5,
                                spot("empty stratum mass", n, n_s, 0));
                        continue;
                    }
                    const double log_z = log_sum_exp(lw);
                    t.check(std::fabs(log_z - stratum.log_z), 1e-9,
                            spot("family mass", n, n_s, 0));

                    double shannon = 0.0;
                    for (double w : lw) shannon += std::exp(w - log_z) * (log_z - w);
                    t.check(std::fabs(stratum_entropy(tables, p, n_s) - shannon), 1e-9,
                            spot("stratum entropy", n, n_s, 0));
                    if (te < 0.0) {
                        const double s2 = conditional_entropy(
                            tables, to_physical(p), static_cast<double>(n_s) / n);
                        t.check(std::fabs(s2 - shannon), 1e-9,
                                spot("conditional entropy", n, n_s, 0));
                    }
                }
            }
    }
    std::ostringstream detail;
    detail << "orders 2.." << n_max
           << "; (U-F)/T and log-space forms vs direct -sum p log p over the "
              "enumerated family";
    if (!t.pass) detail << "; first failure at " << t.first_failure;
    return {"entropy-identity", t.pass, t.max_dev, detail.str()};
}

suite_result verify_cache(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto file = dir / "cache_check.bin";
    const auto tables = build_tables(8);
    save_tables(tables, file);

    bool roundtrip = false, checksum_caught = false, magic_caught = false;
    try {
        const auto back = load_tables(file);
        roundtrip = back.n == tables.n && back.sparse_interface == tables.sparse_interface &&
                    back.dense == tables.dense;
    } catch (const std::exception&) {
    }

    // flip one payload byte: the checksum must reject the file
    {
        std::ifstream in(file, std::ios::binary);
        std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
        raw[raw.size() / 2] = static_cast<char>(raw[raw.size() / 2] ^ 0x40);
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    }
    try {
        load_tables(file);
    } catch (const std::exception&) {
        checksum_caught = true;
    }

    {
        std::ofstream out(file, std::ios::binary | std::ios::trunc);
        out << "not a table cache";
    }
    try {
        load_tables(file);
    } catch (const std::exception&) {
        magic_caught = true;
    }
    std::filesystem::remove(file);

    const bool pass = roundtrip && checksum_caught && magic_caught;
    std::string detail = "round-trip, corrupted-byte rejection, foreign-file rejection";
    if (!pass)
        detail += std::string("; roundtrip=") + (roundtrip ? "ok" : "FAIL") +
                  " checksum=" + (checksum_caught ? "ok" : "FAIL") +
                  " magic=" + (magic_caught ? "ok" : "FAIL");
    return {"table-cache", pass, pass ? 0.0 : 1.0, detail};
}

}  // namespace ecv
