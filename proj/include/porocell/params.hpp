// Material parameters: raw physical values, the 1/(2 mu) rescaling that puts
// the static system into its dimensionless working form, and the
// dimensionless groups used for scenario analysis.
#pragma once

#include <stdexcept>

namespace porocell {

// Rescaled parameters of the static system (tilde symbols with the tilde
// dropped): lambda = lambda_raw/2mu, alpha = alpha_raw/2mu,
// kappa = kappa_raw*tau/2mu, c0 = c0_raw/2mu, lp = lp_raw*tau/2mu.
struct Params {
    double lambda = 1.0;
    double alpha = 1.0;
    double kappa = 1.0;
    double c0 = 1.0;
    double lp = 1.0;

    void validate() const {
        if (!(lambda > 0.0) || !(alpha > 0.0) || !(kappa > 0.0) || !(lp >= 0.0) || !(c0 >= 0.0))
            throw std::invalid_argument(
                "Params: lambda, alpha, kappa must be positive and c0, lp nonnegative");
    }
};

struct PhysicalParams {
    double mu = 1.0;        // shear modulus [Pa]
    double lambda = 1.0;    // Lame parameter [Pa]
    double alpha = 1.0;     // Biot-Willis coefficient [-]
    double kappa = 1.0;     // hydraulic conductivity [m^2 s^-1 Pa^-1]
    double c0 = 1.0;        // storage coefficient [Pa^-1]
    double lp = 1.0;        // membrane permeability [m s^-1 Pa^-1]
    double tau = 1.0;       // time step [s]
    double length = 1.0;    // characteristic length L [m]
    double p0 = 1.0;        // characteristic pressure [Pa]
    double d0 = 1.0;        // characteristic displacement [m]
};

Params rescale(const PhysicalParams& p);

// Dimensionless groups: Darcy number, storage, Biot-Willis, elastic modulus
// and membrane coupling coefficient.
struct NondimGroups {
    double Da = 0.0;  // kappa p0^2 tau / (2 mu d0^2)
    double S = 0.0;   // c0 p0^2 L^2 / (2 mu d0^2)
    double BW = 0.0;  // alpha p0 L / (2 mu d0)
    double E = 0.0;   // lambda / (2 mu)
    double Cp = 0.0;  // L lp / kappa
};

NondimGroups nondimensional_groups(const PhysicalParams& p);

}  // namespace porocell
