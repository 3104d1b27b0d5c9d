#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "ecv/mcmc.hpp"
#include "ecv/multiplicity.hpp"
#include "ecv/oracle.hpp"
#include "ecv/partition.hpp"
#include "ecv/phase.hpp"
#include "ecv/report.hpp"
#include "ecv/version.hpp"

namespace {

using namespace ecv;

// distinguishes flag misuse (exit 2) from computation failures (exit 1)
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct param_flags {
    std::vector<double> theta;
    double temp = 0.0;
    double phic = 0.0;
    CLI::Option* theta_opt = nullptr;
    CLI::Option* temp_opt = nullptr;
    CLI::Option* phic_opt = nullptr;

    void attach(CLI::App* cmd, bool phic_only_mode = false) {
        theta_opt = cmd->add_option("--theta", theta,
                                    "natural parameters: edge,concurrent")
                        ->delimiter(',')
                        ->expected(1, 2);
        temp_opt = cmd->add_option("--temp", temp, "edge temperature (physical form)");
        phic_opt = cmd->add_option("--phic", phic,
                                   phic_only_mode
                                       ? "concurrency energy coefficient"
                                       : "concurrency energy coefficient (physical form)");
    }

    model_params resolve() const {
        const bool have_theta = theta_opt->count() > 0;
        const bool have_phys = temp_opt->count() > 0 || phic_opt->count() > 0;
        if (have_theta == have_phys)
            throw usage_error("supply exactly one of --theta or --temp/--phic");
        if (have_theta) {
            if (theta.size() != 2)
                throw usage_error("--theta needs two values: edge,concurrent");
            return {theta[0], theta[1]};
        }
        if (temp_opt->count() == 0 || phic_opt->count() == 0)
            throw usage_error("the physical form needs both --temp and --phic");
        return to_theta({temp, phic});
    }
};

std::string hash_hex(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

run_metadata base_meta(const std::string& canonical, std::optional<std::uint64_t> seed) {
    run_metadata m;
    m.add("version", std::string(version_string));
    m.add("command", canonical);
    m.add("config_hash", hash_hex(config_hash(canonical)));
    if (seed)
        m.add("seed", *seed);
    else
        m.add("seed", std::string("none"));
    return m;
}

std::filesystem::path cache_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("ECV_CACHE_DIR"); env && *env) return env;
    return "ecv-cache";
}

std::uint64_t pick_seed(CLI::Option* seed_opt, std::uint64_t flag_value) {
    if (seed_opt->count() > 0) return flag_value;
    std::random_device rd;
    const std::uint64_t s =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::printf("seed: %llu (drawn at random; pass --seed to reproduce)\n",
                static_cast<unsigned long long>(s));
    return s;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v[i]);
    }
    return s;
}

const std::map<std::string, proposal_kind> proposal_names{
    {"uniform-dyad", proposal_kind::uniform_dyad},
    {"metropolis", proposal_kind::uniform_dyad},
    {"tie-no-tie", proposal_kind::tie_no_tie},
    {"tnt", proposal_kind::tie_no_tie},
    {"gibbs", proposal_kind::gibbs}};

// ---------------------------------------------------------------- bounds

struct bounds_opts {
    param_flags params;
    bool json = false;
};

int cmd_bounds(const bounds_opts& o) {
    const model_params p = o.params.resolve();
    const auto [lo, hi] = bernoulli_bounds(p);
    const double ratio = hi / lo;
    if (o.json) {
        nlohmann::json j{{"theta_edge", p.theta_edge},
                         {"theta_concurrent", p.theta_concurrent},
                         {"lower", lo},
                         {"upper", hi},
                         {"ratio", std::isfinite(ratio) ? nlohmann::json(ratio)
                                                        : nlohmann::json("inf")}};
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    }
    std::printf("theta_edge: %s\n", format_double(p.theta_edge).c_str());
    std::printf("theta_concurrent: %s\n", format_double(p.theta_concurrent).c_str());
    std::printf("lower: %s\n", format_double(lo).c_str());
    std::printf("upper: %s\n", format_double(hi).c_str());
    std::printf("ratio: %s\n", format_double(ratio).c_str());
    return 0;
}

// ----------------------------------------------------------- free-energy

struct fe_opts {
    param_flags params;
    std::vector<double> temps;
    CLI::Option* temps_opt = nullptr;
    int n = 0;
    std::string out = ".";
    std::string cache;
    bool json = false;
};

int cmd_free_energy(const fe_opts& o) {
    double phic = 0.0;
    std::vector<double> temps;
    if (o.params.theta_opt->count() > 0) {
        if (o.temps_opt->count() > 0)
            throw usage_error("--temps only combines with the physical form");
        const auto pp = to_physical(o.params.resolve());
        phic = pp.phi_concurrent;
        temps = {pp.temperature};
    } else {
        if (o.params.phic_opt->count() == 0)
            throw usage_error("supply --theta, or --phic with --temps");
        phic = o.params.phic;
        temps = o.temps;
        if (o.params.temp_opt->count() > 0) temps.insert(temps.begin(), o.params.temp);
        if (temps.empty()) throw usage_error("no temperatures requested");
    }

    const auto tables = load_or_build(o.n, cache_dir(o.cache));
    std::vector<free_energy_curve> curves;
    curves.reserve(temps.size());
    for (double t : temps)
        curves.push_back(compute_free_energy_curve(tables, {t, phic}));

    std::ostringstream canon;
    canon << "free-energy n=" << o.n << " phic=" << format_double(phic)
          << " temps=" << join_doubles(temps);
    auto meta = base_meta(canon.str(), std::nullopt);
    meta.add("n", static_cast<std::int64_t>(o.n));
    meta.add("phi_concurrent", phic);
    meta.add("columns", std::string("temperature, order parameter, free energy (edge "
                                    "units), entropy (nats)"));

    const auto out_dir = std::filesystem::path(o.out);
    write_curves_csv(out_dir / "curve.csv", meta, curves);
    if (o.json) write_curves_json(out_dir / "curve.json", meta, curves);

    for (const auto& c : curves) {
        const auto minima = local_minima(c);
        std::printf("T=%-10s stable minimum at m=%s (F=%s), %zu local minim%s\n",
                    format_double(c.temperature).c_str(),
                    format_double(minima.front().m).c_str(),
                    format_double(minima.front().free_energy).c_str(), minima.size(),
                    minima.size() == 1 ? "um" : "a");
    }
    std::printf("wrote %s%s\n", (out_dir / "curve.csv").string().c_str(),
                o.json ? " and curve.json" : "");
    return 0;
}

// ----------------------------------------------------------------- phase

struct phase_opts {
    int n = 0;
    double phic = 0.0;
    double tlo = 0.05, thi = 5.0, tol = 1e-3;
    std::vector<double> ratios;
    std::string out = ".";
    std::string cache;
};

int cmd_phase(const phase_opts& o) {
    const auto tables = load_or_build(o.n, cache_dir(o.cache));
    const auto ratios = o.ratios.empty() ? default_ratio_grid() : o.ratios;
    const critical_search search{o.tlo, o.thi, o.tol};
    const auto diagram = map_phase_diagram(tables, o.phic, ratios, search);

    std::ostringstream canon;
    canon << "phase n=" << o.n << " phic=" << format_double(o.phic)
          << " bracket=" << format_double(o.tlo) << ".." << format_double(o.thi)
          << " tol=" << format_double(o.tol) << " ratios=" << join_doubles(ratios);
    auto meta = base_meta(canon.str(), std::nullopt);
    meta.add("n", static_cast<std::int64_t>(o.n));
    meta.add("phi_concurrent", o.phic);
    meta.add("critical_temperature", diagram.critical_temperature);

    const auto out_dir = std::filesystem::path(o.out);
    write_diagram_csv(out_dir / "diagram.csv", meta, diagram);
    write_critical_json(out_dir / "critical.json", meta, diagram);

    std::printf("critical temperature: %s\n",
                format_double(diagram.critical_temperature).c_str());
    std::printf("coexistence from ratio: %s\n",
                format_double(diagram.coexistence_ratio).c_str());
    std::printf("stability flip inside ratio interval: [%s, %s]\n",
                format_double(diagram.flip_interval.first).c_str(),
                format_double(diagram.flip_interval.second).c_str());
    std::printf("wrote %s and %s\n", (out_dir / "diagram.csv").string().c_str(),
                (out_dir / "critical.json").string().c_str());
    return 0;
}

// -------------------------------------------------------------- simulate

struct simulate_opts {
    int n = 0;
    double phic = 0.0;
    double tc = 0.0;
    CLI::Option* tc_opt = nullptr;
    std::vector<double> ratios;
    int reps = 250;
    std::uint64_t burnin = 500000;
    proposal_kind proposal = proposal_kind::tie_no_tie;
    bool desk = false;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    std::string out = ".";
    std::string cache;
    bool json = false;
};

int cmd_simulate(simulate_opts& o) {
    if (o.desk) o.reps = std::min(o.reps, 50);
    double tc = o.tc;
    if (o.tc_opt->count() == 0) {
        const auto tables = load_or_build(o.n, cache_dir(o.cache));
        const auto found = critical_temperature(tables, o.phic);
        if (!found)
            throw std::runtime_error(
                "no coexistence region found; pass --tc to fix the temperature scale");
        tc = *found;
    }

    experiment_config cfg;
    cfg.n = o.n;
    cfg.phi_concurrent = o.phic;
    cfg.critical_temperature = tc;
    cfg.ratios = o.ratios.empty() ? default_ratio_grid() : o.ratios;
    cfg.reps = o.reps;
    cfg.burn_in = o.burnin;
    cfg.proposal = o.proposal;
    cfg.seed = pick_seed(o.seed_opt, o.seed);

    const auto points = mean_order_parameter_experiment(cfg);

    std::ostringstream canon;
    canon << "simulate n=" << o.n << " phic=" << format_double(o.phic)
          << " tc=" << format_double(tc) << " ratios=" << join_doubles(cfg.ratios)
          << " reps=" << cfg.reps << " burnin=" << cfg.burn_in
          << " proposal=" << proposal_name(cfg.proposal) << " seed=" << cfg.seed;
    auto meta = base_meta(canon.str(), cfg.seed);
    meta.add("n", static_cast<std::int64_t>(o.n));
    meta.add("phi_concurrent", o.phic);
    meta.add("critical_temperature", tc);
    meta.add("reps", static_cast<std::int64_t>(cfg.reps));
    meta.add("burn_in", static_cast<std::uint64_t>(cfg.burn_in));
    meta.add("proposal", std::string(proposal_name(cfg.proposal)));

    const auto out_dir = std::filesystem::path(o.out);
    write_orderparam_csv(out_dir / "orderparam.csv", meta, points);
    if (o.json) write_orderparam_json(out_dir / "orderparam.json", meta, points);

    for (const auto& pt : points)
        std::printf("T/Tc=%-6s mean m = %8.5f  [%8.5f, %8.5f]\n",
                    format_double(pt.ratio).c_str(), pt.mean_m, pt.ci_lo, pt.ci_hi);
    std::printf("wrote %s%s\n", (out_dir / "orderparam.csv").string().c_str(),
                o.json ? " and orderparam.json" : "");
    return 0;
}

// ---------------------------------------------------------------- events

struct events_opts {
    param_flags params;
    int n = 0;
    int count = 1000;
    std::uint64_t cap = 50000000;
    int every = 5;
    double threshold = 0.05;
    double binwidth = 0.02;
    double floor = 0.02;
    proposal_kind proposal = proposal_kind::uniform_dyad;
    bool desk = false;
    std::string start_file;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    std::string out = ".";
    bool json = false;
};

int cmd_events(events_opts& o) {
    if (o.desk) {
        o.count = std::min(o.count, 100);
        o.cap = std::min<std::uint64_t>(o.cap, 10000000);
    }
    trajectory_config cfg;
    cfg.n = o.n;
    cfg.params = o.params.resolve();
    cfg.proposal = o.proposal;
    cfg.count = o.count;
    cfg.step_cap = o.cap;
    cfg.subsample = o.every;
    cfg.arrival_m = o.threshold;
    cfg.min_success_rate = o.floor;
    cfg.seed = pick_seed(o.seed_opt, o.seed);
    if (!o.start_file.empty()) {
        std::ifstream in(o.start_file);
        if (!in) throw std::runtime_error("cannot read " + o.start_file);
        cfg.start = read_edge_list(in);
    }

    const auto trajectories = capture_transition_trajectories(cfg);
    const auto tally = tabulate_event_rates(trajectories, o.n, o.binwidth);

    std::ostringstream canon;
    canon << "events n=" << o.n << " theta=" << format_double(cfg.params.theta_edge)
          << ',' << format_double(cfg.params.theta_concurrent) << " count=" << o.count
          << " cap=" << o.cap << " every=" << o.every
          << " threshold=" << format_double(o.threshold)
          << " binwidth=" << format_double(o.binwidth)
          << " proposal=" << proposal_name(cfg.proposal) << " seed=" << cfg.seed;
    auto meta = base_meta(canon.str(), cfg.seed);
    meta.add("n", static_cast<std::int64_t>(o.n));
    meta.add("theta_edge", cfg.params.theta_edge);
    meta.add("theta_concurrent", cfg.params.theta_concurrent);
    meta.add("trajectories", static_cast<std::uint64_t>(trajectories.size()));
    meta.add("subsample", static_cast<std::int64_t>(o.every));
    meta.add("arrival_threshold", o.threshold);
    meta.add("interval_rule", std::string("Jeffreys binomial posterior, 95% equal-tailed"));

    const auto out_dir = std::filesystem::path(o.out);
    write_events_csv(out_dir / "events.csv", meta, tally);
    write_trajectories_log(out_dir / "trajectories.log", meta, trajectories);
    if (o.json) write_events_json(out_dir / "events.json", meta, tally);

    std::uint64_t steps = 0, toggles = 0;
    for (const auto& t : trajectories) {
        steps += t.total_steps;
        toggles += t.accepted_toggles;
    }
    std::printf("captured %zu transitions (mean %.3g steps, %.3g accepted toggles)\n",
                trajectories.size(),
                static_cast<double>(steps) / trajectories.size(),
                static_cast<double>(toggles) / trajectories.size());
    std::printf("wrote %s and %s%s\n", (out_dir / "events.csv").string().c_str(),
                (out_dir / "trajectories.log").string().c_str(),
                o.json ? " and events.json" : "");
    return 0;
}

// ---------------------------------------------------------------- verify

struct verify_opts {
    int nmax = 6;
    std::string scratch;
};

int cmd_verify(const verify_opts& o) {
    std::vector<suite_result> results;
    results.push_back(verify_counting(std::min(o.nmax, 7)));
    if (o.nmax > max_exact_order())
        std::printf("note: exact-partition suites are capped at order %d\n",
                    max_exact_order());
    results.push_back(verify_undercount(std::min(o.nmax, max_exact_order())));
    results.push_back(verify_entropy_identity(std::min(o.nmax, 5)));
    const auto scratch = o.scratch.empty()
                             ? std::filesystem::temp_directory_path() / "ecv-verify"
                             : std::filesystem::path(o.scratch);
    results.push_back(verify_cache(scratch));

    bool all = true;
    for (const auto& r : results) {
        std::printf("%s %-22s max deviation %.3e  (%s)\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.max_deviation, r.detail.c_str());
        all = all && r.pass;
    }
    if (!all) throw std::runtime_error("oracle verification failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge/concurrent-vertex graph model toolkit"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "OpenMP thread count (default: all)")
        ->check(CLI::PositiveNumber);

    bounds_opts bo;
    auto* bounds = app.add_subcommand("bounds", "marginal tie-probability bounds");
    bo.params.attach(bounds);
    bounds->add_flag("--json", bo.json, "emit JSON to stdout");

    fe_opts fo;
    auto* fe = app.add_subcommand("free-energy", "conditional free-energy curves");
    fo.params.attach(fe);
    fe->add_option("--n", fo.n, "graph order")->required()->check(CLI::PositiveNumber);
    fo.temps_opt = fe->add_option("--temps", fo.temps, "temperature list")->delimiter(',');
    fe->add_option("--out", fo.out, "output directory");
    fe->add_option("--cache", fo.cache, "multiplicity table cache directory");
    fe->add_flag("--json", fo.json, "also write a JSON mirror");

    phase_opts po;
    auto* phase = app.add_subcommand("phase", "critical temperature and minima trace");
    phase->add_option("--n", po.n, "graph order")->required()->check(CLI::PositiveNumber);
    phase->add_option("--phic", po.phic, "concurrency energy coefficient")->required();
    phase->add_option("--tlo", po.tlo, "search bracket lower edge");
    phase->add_option("--thi", po.thi, "search bracket upper edge");
    phase->add_option("--tol", po.tol, "bisection tolerance");
    phase->add_option("--ratios", po.ratios, "T/Tc grid")->delimiter(',');
    phase->add_option("--out", po.out, "output directory");
    phase->add_option("--cache", po.cache, "multiplicity table cache directory");

    simulate_opts so;
    auto* sim = app.add_subcommand("simulate", "mean order parameter vs temperature");
    sim->add_option("--n", so.n, "graph order")->required()->check(CLI::PositiveNumber);
    sim->add_option("--phic", so.phic, "concurrency energy coefficient")->required();
    so.tc_opt = sim->add_option("--tc", so.tc, "critical temperature (skip recomputing)");
    sim->add_option("--ratios", so.ratios, "T/Tc grid")->delimiter(',');
    sim->add_option("--reps", so.reps, "replicates per grid point")
        ->check(CLI::PositiveNumber);
    sim->add_option("--burnin", so.burnin, "burn-in steps per replicate");
    sim->add_option("--proposal", so.proposal, "sampler")
        ->transform(CLI::CheckedTransformer(proposal_names, CLI::ignore_case));
    sim->add_flag("--desk", so.desk, "desk-scale preset (50 reps)");
    so.seed_opt = sim->add_option("--seed", so.seed, "RNG seed");
    sim->add_option("--out", so.out, "output directory");
    sim->add_option("--cache", so.cache, "multiplicity table cache directory");
    sim->add_flag("--json", so.json, "also write a JSON mirror");

    events_opts eo;
    auto* events = app.add_subcommand("events", "transition trajectories and event rates");
    eo.params.attach(events);
    events->add_option("--n", eo.n, "graph order")->required()->check(CLI::PositiveNumber);
    events->add_option("--count", eo.count, "transitions to capture")
        ->check(CLI::PositiveNumber);
    events->add_option("--cap", eo.cap, "step cap per candidate chain");
    events->add_option("--every", eo.every, "store every k-th accepted toggle")
        ->check(CLI::PositiveNumber);
    events->add_option("--threshold", eo.threshold, "dense-phase arrival m");
    events->add_option("--binwidth", eo.binwidth, "order-parameter bin width");
    events->add_option("--floor", eo.floor, "minimum candidate success rate");
    events->add_option("--proposal", eo.proposal, "sampler")
        ->transform(CLI::CheckedTransformer(proposal_names, CLI::ignore_case));
    events->add_flag("--desk", eo.desk, "desk-scale preset (100 transitions, 1e7 cap)");
    events->add_option("--start", eo.start_file, "edge-list file for the start state");
    eo.seed_opt = events->add_option("--seed", eo.seed, "RNG seed");
    events->add_option("--out", eo.out, "output directory");
    events->add_flag("--json", eo.json, "also write a JSON mirror");

    verify_opts vo;
    auto* verify = app.add_subcommand("verify", "oracle-equivalence suites");
    verify->add_option("--nmax", vo.nmax, "largest order to verify")
        ->check(CLI::Range(2, 7));
    verify->add_option("--scratch", vo.scratch, "scratch directory for cache checks");

    for (auto* sub : {bounds, fe, phase, sim, events, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*bounds) return cmd_bounds(bo);
        if (*fe) return cmd_free_energy(fo);
        if (*phase) return cmd_phase(po);
        if (*sim) return cmd_simulate(so);
        if (*events) return cmd_events(eo);
        if (*verify) return cmd_verify(vo);
    } catch (const usage_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
