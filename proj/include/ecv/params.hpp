#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace ecv {

// Natural parameters of the edge/concurrent-vertex ERGM:
// Pr(Y=y) ∝ exp(theta_edge * t_e(y) + theta_concurrent * t_c(y)),
// where t_e counts edges and t_c counts vertices of degree > 1.
struct model_params {
    double theta_edge = 0.0;
    double theta_concurrent = 0.0;
};

// Equivalent physical form: -phi^T t / T = theta^T t with the edge energy
// fixed at 1 and k_B = 1, so T = -1/theta_edge and phi_c = theta_c/theta_e.
// Temperature may be negative (theta_edge > 0); it cannot be zero.
struct physical_params {
    double temperature = 1.0;
    double phi_concurrent = 0.0;
};

physical_params to_physical(const model_params& p);  // throws if theta_edge == 0
model_params to_theta(const physical_params& p);     // throws if temperature == 0

// Endpoint classes of a dyad, evaluated with the focal edge forced absent:
// (I)solate = degree 0, (P)endant = degree 1, (C)oncurrent = degree >= 2.
// Order-insensitive (IC == CI).
enum class dyad_class : std::uint8_t { II, IC, CC, PI, PC, PP };

constexpr const char* dyad_class_name(dyad_class c) {
    constexpr const char* names[] = {"II", "IC", "CC", "PI", "PC", "PP"};
    return names[static_cast<int>(c)];
}

// Number of pendant endpoints: 0 for II/IC/CC, 1 for PI/PC, 2 for PP.
// This is the three-way grouping that drives the conditional tie law.
constexpr int pendant_count(dyad_class c) {
    switch (c) {
        case dyad_class::PI:
        case dyad_class::PC: return 1;
        case dyad_class::PP: return 2;
        default: return 0;
    }
}

inline double inverse_logit(double x) {
    // stable both directions
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

// Conditional log-odds that a dyad of the given class is a tie:
// theta_e + pendant_count * theta_c.
inline double tie_log_odds(const model_params& p, dyad_class c) {
    return p.theta_edge + pendant_count(c) * p.theta_concurrent;
}

inline double tie_probability(const model_params& p, dyad_class c) {
    return inverse_logit(tie_log_odds(p, c));
}

// Homogeneous Bernoulli-graph bounds on the marginal tie probability:
// logit^-1(theta_e + 2 theta_c) <= Pr(tie) <= logit^-1(theta_e) when
// theta_concurrent <= 0. For theta_concurrent > 0 (pendant avoidance)
// the two expressions swap roles; the returned pair is always
// (lower, upper).
std::pair<double, double> bernoulli_bounds(const model_params& p);

}  // namespace ecv
