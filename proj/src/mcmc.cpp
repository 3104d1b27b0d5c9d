#include "ecv/mcmc.hpp"

#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ecv {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::pair<int, int> pick_dyad(int n, rng::stream& rs) {
    const int i = static_cast<int>(rs.below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(rs.below(static_cast<std::uint64_t>(n) - 1));
    if (j >= i) ++j;
    return {std::min(i, j), std::max(i, j)};
}

struct step_outcome {
    bool toggled = false;
    int i = 0, j = 0;
    bool formed = false;       // direction of the (attempted) toggle
    dyad_class cls = dyad_class::II;
    double m_before = 0.0;
};

bool accept(double log_ratio, rng::stream& rs) {
    return log_ratio >= 0.0 || rs.unit() < std::exp(log_ratio);
}

step_outcome metropolis_detail(graph& g, model_params p, rng::stream& rs) {
    step_outcome o;
    std::tie(o.i, o.j) = pick_dyad(g.order(), rs);
    o.formed = !g.has_edge(o.i, o.j);
    o.cls = g.classify_dyad(o.i, o.j);
    o.m_before = g.order_parameter();
    const auto [de, dc] = g.change_score(o.i, o.j);
    double log_r = p.theta_edge * de + p.theta_concurrent * dc;
    if (!o.formed) log_r = -log_r;
    if (accept(log_r, rs)) {
        g.toggle_edge(o.i, o.j);
        o.toggled = true;
    }
    return o;
}

step_outcome tnt_detail(graph& g, model_params p, rng::stream& rs) {
    step_outcome o;
    const int n = g.order();
    const int ties = g.edge_count();
    const double dyads = 0.5 * n * (n - 1);
    const bool mixing = ties > 0;  // edge branch only exists with ties present
    if (mixing && rs.unit() < 0.5)
        std::tie(o.i, o.j) = g.edge_at(static_cast<int>(rs.below(ties)));
    else
        std::tie(o.i, o.j) = pick_dyad(n, rs);

    o.formed = !g.has_edge(o.i, o.j);
    o.cls = g.classify_dyad(o.i, o.j);
    o.m_before = g.order_parameter();
    const auto [de, dc] = g.change_score(o.i, o.j);
    double log_r;
    if (o.formed) {
        const double q_fwd = (mixing ? 0.5 : 1.0) / dyads;
        const double q_rev = 0.5 / (ties + 1) + 0.5 / dyads;
        log_r = p.theta_edge * de + p.theta_concurrent * dc +
                std::log(q_rev) - std::log(q_fwd);
    } else {
        const double q_fwd = 0.5 / ties + 0.5 / dyads;
        const double q_rev = (ties > 1 ? 0.5 : 1.0) / dyads;
        log_r = -(p.theta_edge * de + p.theta_concurrent * dc) +
                std::log(q_rev) - std::log(q_fwd);
    }
    if (accept(log_r, rs)) {
        g.toggle_edge(o.i, o.j);
        o.toggled = true;
    }
    return o;
}

step_outcome gibbs_detail(graph& g, model_params p, rng::stream& rs) {
    step_outcome o;
    std::tie(o.i, o.j) = pick_dyad(g.order(), rs);
    const bool present = g.has_edge(o.i, o.j);
    o.formed = !present;
    o.cls = g.classify_dyad(o.i, o.j);
    o.m_before = g.order_parameter();
    const auto [de, dc] = g.change_score(o.i, o.j);
    const double p_tie = inverse_logit(p.theta_edge * de + p.theta_concurrent * dc);
    const bool want = rs.unit() < p_tie;
    if (want != present) {
        g.toggle_edge(o.i, o.j);
        o.toggled = true;
    }
    return o;
}

step_outcome step_detail(graph& g, model_params p, rng::stream& rs, proposal_kind k) {
    switch (k) {
        case proposal_kind::uniform_dyad: return metropolis_detail(g, p, rs);
        case proposal_kind::tie_no_tie: return tnt_detail(g, p, rs);
        case proposal_kind::gibbs: return gibbs_detail(g, p, rs);
    }
    throw std::logic_error("unknown proposal kind");
}

void validate(const chain_config& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("chain order must be positive");
    if (cfg.steps < cfg.burn_in)
        throw std::invalid_argument("total steps must cover the burn-in");
    if (cfg.thinning < 1) throw std::invalid_argument("thinning must be >= 1");
    if (cfg.seed_density && !(*cfg.seed_density >= 0.0 && *cfg.seed_density <= 1.0))
        throw std::invalid_argument("seed density must lie in [0, 1]");
}

trajectory_summary run_candidate(const trajectory_config& cfg, std::uint64_t index) {
    trajectory_summary t;
    t.candidate_index = index;
    t.seed = rng::child_seed(cfg.seed, index);
    t.occupancy.assign(static_cast<std::size_t>(cfg.n) + 1, 0);

    rng::stream rs(t.seed);
    graph g = cfg.start ? *cfg.start : graph(cfg.n);
    if (g.order_parameter() <= cfg.arrival_m) {
        t.completed = true;
        return t;
    }
    for (std::uint64_t s = 0; s < cfg.step_cap; ++s) {
        ++t.occupancy[static_cast<std::size_t>(g.concurrent_count())];
        const auto o = step_detail(g, cfg.params, rs, cfg.proposal);
        t.total_steps = s + 1;
        if (!o.toggled) continue;
        ++t.accepted_toggles;
        if (t.accepted_toggles % static_cast<std::uint64_t>(cfg.subsample) == 0)
            t.events.push_back({s, o.i, o.j, o.formed, o.cls, o.m_before});
        if (g.order_parameter() <= cfg.arrival_m) {
            t.completed = true;
            break;
        }
    }
    return t;
}

class_rate make_rate(std::uint64_t count, std::uint64_t exposure) {
    class_rate r;
    r.count = count;
    if (exposure == 0) {
        r.rate = r.lo = r.hi = nan;
        return r;
    }
    const double a = static_cast<double>(count) + 0.5;
    const double b = static_cast<double>(exposure - count) + 0.5;
    const boost::math::beta_distribution<double> post(a, b);
    r.rate = a / (a + b);
    r.lo = boost::math::quantile(post, 0.025);
    r.hi = boost::math::quantile(post, 0.975);
    return r;
}

}  // namespace

const char* proposal_name(proposal_kind k) {
    switch (k) {
        case proposal_kind::uniform_dyad: return "uniform-dyad";
        case proposal_kind::tie_no_tie: return "tie-no-tie";
        case proposal_kind::gibbs: return "gibbs";
    }
    return "?";
}

bool metropolis_step(graph& g, model_params p, rng::stream& rs) {
    return metropolis_detail(g, p, rs).toggled;
}

bool tnt_step(graph& g, model_params p, rng::stream& rs) {
    return tnt_detail(g, p, rs).toggled;
}

bool gibbs_step(graph& g, model_params p, rng::stream& rs) {
    return gibbs_detail(g, p, rs).toggled;
}

graph seed_graph(int n, double density, rng::stream& rs) {
    graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rs.unit() < density) g.set_edge(i, j, true);
    return g;
}

std::vector<chain_sample> run_chain(const chain_config& cfg) {
    validate(cfg);
    rng::stream rs(cfg.seed);
    const double density = cfg.seed_density ? *cfg.seed_density : rs.unit();
    graph g = seed_graph(cfg.n, density, rs);

    std::vector<chain_sample> out;
    for (std::uint64_t s = 0;; ++s) {
        if (s >= cfg.burn_in && (s - cfg.burn_in) % cfg.thinning == 0)
            out.push_back({s, g.edge_count(), g.concurrent_count(), g.order_parameter()});
        if (s == cfg.steps) break;
        step_detail(g, cfg.params, rs, cfg.proposal);
    }
    return out;
}

std::vector<experiment_point> mean_order_parameter_experiment(
    const experiment_config& cfg) {
    if (cfg.ratios.empty()) throw std::invalid_argument("empty temperature grid");
    if (cfg.reps < 2) throw std::invalid_argument("need at least two replicates");
    if (!(cfg.critical_temperature > 0))
        throw std::invalid_argument("critical temperature must be positive");

    std::vector<experiment_point> out(cfg.ratios.size());
    for (std::size_t gi = 0; gi < cfg.ratios.size(); ++gi) {
        const double t = cfg.ratios[gi] * cfg.critical_temperature;
        const model_params p = to_theta({t, cfg.phi_concurrent});
        std::vector<double> draws(static_cast<std::size_t>(cfg.reps));

#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < cfg.reps; ++r) {
            chain_config cc;
            cc.n = cfg.n;
            cc.params = p;
            cc.proposal = cfg.proposal;
            cc.burn_in = cfg.burn_in;
            cc.steps = cfg.burn_in;  // one draw at the end of burn-in
            cc.seed = rng::child_seed(cfg.seed,
                                      gi * static_cast<std::uint64_t>(cfg.reps) +
                                          static_cast<std::uint64_t>(r));
            draws[static_cast<std::size_t>(r)] = run_chain(cc).back().order_parameter;
        }

        double mean = 0.0;
        for (double d : draws) mean += d;
        mean /= cfg.reps;
        double var = 0.0;
        for (double d : draws) var += (d - mean) * (d - mean);
        var /= (cfg.reps - 1);
        const double half = 1.959963984540054 * std::sqrt(var / cfg.reps);
        out[gi] = {t, cfg.ratios[gi], mean, mean - half, mean + half, cfg.reps};
    }
    return out;
}

std::vector<trajectory_summary> capture_transition_trajectories(
    const trajectory_config& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("order must be positive");
    if (cfg.count < 1) throw std::invalid_argument("need a positive trajectory count");
    if (cfg.subsample < 1) throw std::invalid_argument("subsample stride must be >= 1");
    if (!(cfg.arrival_m > 0.0 && cfg.arrival_m < 1.0))
        throw std::invalid_argument("arrival threshold must lie in (0, 1)");
    if (!(cfg.min_success_rate > 0.0))
        throw std::invalid_argument("success-rate floor must be positive");
    if (cfg.start) {
        if (cfg.start->order() != cfg.n)
            throw std::invalid_argument("start graph order mismatch");
        for (int v = 0; v < cfg.n; ++v)
            if (cfg.start->degree(v) > 1)
                throw std::invalid_argument("start graph must be in the sparse phase");
    }

    std::vector<trajectory_summary> done;
    done.reserve(static_cast<std::size_t>(cfg.count));
    std::uint64_t next_index = 0, attempted = 0, succeeded = 0;
    while (static_cast<int>(done.size()) < cfg.count) {
        const int wave = std::max(16, cfg.count - static_cast<int>(done.size()));
        std::vector<trajectory_summary> results(static_cast<std::size_t>(wave));

#pragma omp parallel for schedule(dynamic)
        for (int w = 0; w < wave; ++w)
            results[static_cast<std::size_t>(w)] =
                run_candidate(cfg, next_index + static_cast<std::uint64_t>(w));
        next_index += static_cast<std::uint64_t>(wave);

        for (auto& r : results) {
            ++attempted;
            if (!r.completed) continue;
            ++succeeded;
            if (static_cast<int>(done.size()) < cfg.count) done.push_back(std::move(r));
        }
        if (static_cast<int>(done.size()) < cfg.count && attempted >= 32 &&
            static_cast<double>(succeeded) / static_cast<double>(attempted) <
                cfg.min_success_rate) {
            std::ostringstream msg;
            msg << "transition capture stalled: " << succeeded << "/" << attempted
                << " candidates reached m <= " << cfg.arrival_m << " within "
                << cfg.step_cap << " steps; raise the cap or move theta toward the "
                << "dense phase";
            throw std::runtime_error(msg.str());
        }
    }
    return done;
}

event_tally tabulate_event_rates(const std::vector<trajectory_summary>& trajectories,
                                 int n, double bin_width) {
    if (trajectories.empty()) throw std::invalid_argument("no trajectories to tabulate");
    if (n < 1) throw std::invalid_argument("order must be positive");
    if (!(bin_width > 0.0 && bin_width <= 1.0))
        throw std::invalid_argument("bin width must lie in (0, 1]");

    event_tally tally;
    tally.n = n;
    tally.bin_width = bin_width;
    const int nbins = static_cast<int>(std::ceil(1.0 / bin_width - 1e-12));
    const auto bin_of = [&](double m) {
        return std::min(static_cast<int>(m / bin_width), nbins - 1);
    };
    tally.bins.resize(static_cast<std::size_t>(nbins));

    std::vector<std::vector<std::uint64_t>> class_counts(
        static_cast<std::size_t>(nbins), std::vector<std::uint64_t>(6, 0));
    std::vector<std::uint64_t> exposure(static_cast<std::size_t>(nbins), 0);

    for (const auto& t : trajectories) {
        for (std::size_t tc = 0; tc < t.occupancy.size(); ++tc) {
            if (t.occupancy[tc] == 0) continue;
            const double m = 1.0 - static_cast<double>(tc) / n;
            exposure[static_cast<std::size_t>(bin_of(m))] += t.occupancy[tc];
        }
        for (const auto& e : t.events)
            if (e.formed)
                ++class_counts[static_cast<std::size_t>(bin_of(e.m_before))]
                              [static_cast<std::size_t>(e.cls)];
    }

    for (int b = 0; b < nbins; ++b) {
        auto& bin = tally.bins[static_cast<std::size_t>(b)];
        bin.m_lo = b * bin_width;
        bin.m_hi = std::min(1.0, (b + 1) * bin_width);
        bin.exposure = exposure[static_cast<std::size_t>(b)];
        bin.by_class.resize(6);
        bin.by_group.resize(3);
        std::uint64_t group_counts[3] = {0, 0, 0};
        for (int c = 0; c < 6; ++c) {
            const std::uint64_t cnt = class_counts[static_cast<std::size_t>(b)]
                                                  [static_cast<std::size_t>(c)];
            bin.by_class[static_cast<std::size_t>(c)] = make_rate(cnt, bin.exposure);
            group_counts[pendant_count(static_cast<dyad_class>(c))] += cnt;
        }
        for (int gidx = 0; gidx < 3; ++gidx)
            bin.by_group[static_cast<std::size_t>(gidx)] =
                make_rate(group_counts[gidx], bin.exposure);
    }
    return tally;
}

bool replay_consistent(const trajectory_summary& t, int n,
                       const std::optional<graph>& start) {
    graph g = start ? *start : graph(n);
    for (const auto& e : t.events) {
        if (e.i < 0 || e.j <= e.i || e.j >= n) return false;
        if (g.has_edge(e.i, e.j) == e.formed) return false;
        if (g.classify_dyad(e.i, e.j) != e.cls) return false;
        if (g.order_parameter() != e.m_before) return false;
        g.toggle_edge(e.i, e.j);
    }
    return true;
}

dyad_frequency_result dyad_tie_frequencies(const chain_config& cfg, int batches) {
    validate(cfg);
    if (batches < 2) throw std::invalid_argument("need at least two batches");
    const std::uint64_t total = (cfg.steps - cfg.burn_in) / cfg.thinning + 1;
    if (total < static_cast<std::uint64_t>(batches))
        throw std::invalid_argument("too few samples for the batch count");

    const std::size_t dyads = static_cast<std::size_t>(cfg.n) *
                              static_cast<std::size_t>(cfg.n - 1) / 2;
    std::vector<std::vector<std::uint64_t>> batch_sum(
        static_cast<std::size_t>(batches), std::vector<std::uint64_t>(dyads, 0));
    std::vector<std::uint64_t> batch_n(static_cast<std::size_t>(batches), 0);

    rng::stream rs(cfg.seed);
    const double density = cfg.seed_density ? *cfg.seed_density : rs.unit();
    graph g = seed_graph(cfg.n, density, rs);

    std::uint64_t sampled = 0;
    for (std::uint64_t s = 0;; ++s) {
        if (s >= cfg.burn_in && (s - cfg.burn_in) % cfg.thinning == 0) {
            const std::size_t b = static_cast<std::size_t>(
                std::min<std::uint64_t>(static_cast<std::uint64_t>(batches) - 1,
                                        sampled * static_cast<std::uint64_t>(batches) /
                                            total));
            ++batch_n[b];
            std::size_t d = 0;
            for (int i = 0; i < cfg.n; ++i)
                for (int j = i + 1; j < cfg.n; ++j, ++d)
                    batch_sum[b][d] += g.has_edge(i, j) ? 1 : 0;
            ++sampled;
        }
        if (s == cfg.steps) break;
        step_detail(g, cfg.params, rs, cfg.proposal);
    }

    dyad_frequency_result out;
    const auto [lo, hi] = bernoulli_bounds(cfg.params);
    out.bound_lo = lo;
    out.bound_hi = hi;
    out.frequency.resize(dyads);
    out.standard_error.resize(dyads);
    for (std::size_t d = 0; d < dyads; ++d) {
        std::vector<double> means(static_cast<std::size_t>(batches));
        double grand = 0.0, weight = 0.0;
        for (int b = 0; b < batches; ++b) {
            means[static_cast<std::size_t>(b)] =
                static_cast<double>(batch_sum[static_cast<std::size_t>(b)][d]) /
                static_cast<double>(batch_n[static_cast<std::size_t>(b)]);
            grand += static_cast<double>(batch_sum[static_cast<std::size_t>(b)][d]);
            weight += static_cast<double>(batch_n[static_cast<std::size_t>(b)]);
        }
        grand /= weight;
        double var = 0.0;
        for (int b = 0; b < batches; ++b) {
            const double diff = means[static_cast<std::size_t>(b)] - grand;
            var += diff * diff;
        }
        var /= (batches - 1);
        out.frequency[d] = grand;
        out.standard_error[d] = std::sqrt(var / batches);
    }
    return out;
}

formation_tally tally_formation_acceptance(const chain_config& cfg) {
    validate(cfg);
    rng::stream rs(cfg.seed);
    const double density = cfg.seed_density ? *cfg.seed_density : rs.unit();
    graph g = seed_graph(cfg.n, density, rs);

    formation_tally tally;
    for (std::uint64_t s = 0; s < cfg.steps; ++s) {
        const auto o = step_detail(g, cfg.params, rs, cfg.proposal);
        if (!o.formed) continue;
        const int grp = pendant_count(o.cls);
        ++tally.proposed[grp];
        if (o.toggled) ++tally.accepted[grp];
    }
    return tally;
}

}  // namespace ecv
