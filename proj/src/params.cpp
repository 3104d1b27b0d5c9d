#include "ecv/params.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecv {

physical_params to_physical(const model_params& p) {
    if (p.theta_edge == 0.0)
        throw std::invalid_argument("theta_edge = 0 corresponds to infinite temperature");
    return {-1.0 / p.theta_edge, p.theta_concurrent / p.theta_edge};
}

model_params to_theta(const physical_params& p) {
    if (p.temperature == 0.0)
        throw std::invalid_argument("temperature must be nonzero");
    return {-1.0 / p.temperature, -p.phi_concurrent / p.temperature};
}

std::pair<double, double> bernoulli_bounds(const model_params& p) {
    const double at_pp = inverse_logit(p.theta_edge + 2.0 * p.theta_concurrent);
    const double at_ii = inverse_logit(p.theta_edge);
    return {std::min(at_pp, at_ii), std::max(at_pp, at_ii)};
}

}  // namespace ecv
