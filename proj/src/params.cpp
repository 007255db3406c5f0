#include "porocell/params.hpp"

namespace porocell {

Params rescale(const PhysicalParams& p) {
    if (!(p.mu > 0.0) || !(p.tau > 0.0))
        throw std::invalid_argument("rescale: mu and tau must be positive");
    const double s = 1.0 / (2.0 * p.mu);
    Params out;
    out.lambda = p.lambda * s;
    out.alpha = p.alpha * s;
    out.kappa = p.kappa * p.tau * s;
    out.c0 = p.c0 * s;
    out.lp = p.lp * p.tau * s;
    out.validate();
    return out;
}

NondimGroups nondimensional_groups(const PhysicalParams& p) {
    const double two_mu = 2.0 * p.mu;
    NondimGroups g;
    g.Da = p.kappa * p.p0 * p.p0 * p.tau / (two_mu * p.d0 * p.d0);
    g.S = p.c0 * p.p0 * p.p0 * p.length * p.length / (two_mu * p.d0 * p.d0);
    g.BW = p.alpha * p.p0 * p.length / (two_mu * p.d0);
    g.E = p.lambda / two_mu;
    g.Cp = p.length * p.lp / p.kappa;
    return g;
}

}  // namespace porocell
