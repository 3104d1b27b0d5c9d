#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecv/graph.hpp"
#include "ecv/params.hpp"
#include "ecv/rng.hpp"

namespace ecv {

enum class proposal_kind { uniform_dyad, tie_no_tie, gibbs };
const char* proposal_name(proposal_kind k);

// One update each; return whether the state changed.  All three leave the
// model law invariant.
bool metropolis_step(graph& g, model_params p, rng::stream& rs);
bool tnt_step(graph& g, model_params p, rng::stream& rs);
bool gibbs_step(graph& g, model_params p, rng::stream& rs);

struct chain_config {
    int n = 0;
    model_params params;
    proposal_kind proposal = proposal_kind::tie_no_tie;
    std::uint64_t burn_in = 0;
    std::uint64_t steps = 0;  // total update attempts, burn-in included
    std::uint64_t thinning = 1;
    std::uint64_t seed = 0;
    // Bernoulli density of the seed graph; unset draws it uniformly on [0,1)
    // from the chain's own stream.
    std::optional<double> seed_density;
};

struct chain_sample {
    std::uint64_t step = 0;
    int edge_count = 0;
    int concurrent_count = 0;
    double order_parameter = 0.0;
};

// Samples the state at step burn_in and then every `thinning` attempts.
std::vector<chain_sample> run_chain(const chain_config& cfg);

// Seed graph construction used by all the runners.
graph seed_graph(int n, double density, rng::stream& rs);

struct experiment_config {
    int n = 0;
    double phi_concurrent = 0.0;
    double critical_temperature = 0.0;
    std::vector<double> ratios;  // T / T_c grid
    int reps = 250;
    std::uint64_t burn_in = 500000;
    proposal_kind proposal = proposal_kind::tie_no_tie;
    std::uint64_t seed = 0;
};

struct experiment_point {
    double temperature = 0.0;
    double ratio = 0.0;
    double mean_m = 0.0;
    double ci_lo = 0.0;  // normal-approximation 95% interval
    double ci_hi = 0.0;
    int reps = 0;
};

// One independent draw per replicate (state after burn-in), fresh
// uniform-density Bernoulli seed graph each, averaged per grid point.
std::vector<experiment_point> mean_order_parameter_experiment(
    const experiment_config& cfg);

struct toggle_event {
    std::uint64_t step = 0;  // attempt index within the chain
    int i = 0, j = 0;
    bool formed = false;  // otherwise dissolved
    dyad_class cls = dyad_class::II;
    double m_before = 0.0;
};

struct trajectory_summary {
    std::uint64_t seed = 0;
    std::uint64_t candidate_index = 0;
    bool completed = false;
    std::uint64_t total_steps = 0;
    std::uint64_t accepted_toggles = 0;
    std::vector<toggle_event> events;      // every k-th accepted toggle
    std::vector<std::uint64_t> occupancy;  // attempts spent at each t_c value
};

struct trajectory_config {
    int n = 0;
    model_params params;
    proposal_kind proposal = proposal_kind::uniform_dyad;
    int count = 1000;
    std::uint64_t step_cap = 50000000;
    int subsample = 5;              // store every k-th accepted toggle
    double arrival_m = 0.05;        // dense-phase arrival threshold
    double min_success_rate = 0.02; // abort floor over candidate runs
    std::uint64_t seed = 0;
    std::optional<graph> start;     // sparse start state; empty graph if unset
};

// Runs candidate chains from the sparse start until `count` of them reach the
// dense phase within the step cap; candidates are consumed in index order so
// the result set is reproducible.  Throws if the success rate falls below the
// configured floor.
std::vector<trajectory_summary> capture_transition_trajectories(
    const trajectory_config& cfg);

struct class_rate {
    std::uint64_t count = 0;
    double rate = 0.0;  // Jeffreys-posterior mean; NaN when exposure is zero
    double lo = 0.0;    // 95% equal-tailed posterior interval
    double hi = 0.0;
};

struct event_bin {
    double m_lo = 0.0, m_hi = 0.0;
    std::uint64_t exposure = 0;          // attempts spent with m in this bin
    std::vector<class_rate> by_class;    // one per dyad_class, index = enum value
    std::vector<class_rate> by_group;    // endpoint pendant count 0, 1, 2
};

struct event_tally {
    int n = 0;
    double bin_width = 0.0;
    std::vector<event_bin> bins;
};

// Formation events binned by pre-event order parameter; rates are
// events-per-attempt with Jeffreys binomial posteriors.
event_tally tabulate_event_rates(const std::vector<trajectory_summary>& trajectories,
                                 int n, double bin_width = 0.02);

// Recomputes the statistics stream from a stored trajectory's events and
// checks it against the stored m values; used by the replay-integrity tests
// and the verify command.
bool replay_consistent(const trajectory_summary& t, int n,
                       const std::optional<graph>& start = std::nullopt);

struct dyad_frequency_result {
    double bound_lo = 0.0, bound_hi = 0.0;  // marginal tie-probability bounds
    std::vector<double> frequency;          // per dyad, (i,j) with i<j in row order
    std::vector<double> standard_error;     // batch-means MC error per dyad
};

// Long-run per-dyad tie frequencies with batch-means errors, for checking the
// marginal bounds.
dyad_frequency_result dyad_tie_frequencies(const chain_config& cfg, int batches = 50);

struct formation_tally {
    std::uint64_t proposed[3] = {0, 0, 0};  // formation proposals by pendant group
    std::uint64_t accepted[3] = {0, 0, 0};
};

// Tallies Metropolis formation-proposal acceptance by endpoint group.
formation_tally tally_formation_acceptance(const chain_config& cfg);

}  // namespace ecv
