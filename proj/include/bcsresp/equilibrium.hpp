#pragma once

#include <cmath>

#include "bcsresp/quadrature.hpp"
#include "bcsresp/types.hpp"

namespace bcsresp {

// Equilibrium state of the relativistic BCS superfluid, natural units
// (hbar = c = e = 1). Energies and momenta in units of the fermion mass
// unless the caller chooses otherwise.
struct SystemParams {
    double m = 1.0;           // fermion mass
    double mu = 0.0;          // chemical potential
    double delta = 0.0;       // pairing gap, >= 0
    double g = 0.0;           // attractive coupling
    double lambda_cut = 1.0;  // hard momentum cutoff
    double temperature = 0.0;

    void validate() const {
        if (m <= 0) throw ConfigError("m must be positive");
        if (lambda_cut <= 0) throw ConfigError("lambda_cut must be positive");
        if (temperature < 0) throw ConfigError("temperature must be >= 0");
        if (delta < 0) throw ConfigError("delta must be >= 0");
    }
};

// dispersions and coherence factors at one momentum magnitude
struct QuasiparticleFrame {
    double p;
    double eps;                   // sqrt(p^2 + m^2)
    double xi_minus, xi_plus;     // eps -/+ mu  (xi^pm = eps \pm mu)
    double e_minus, e_plus;       // sqrt(xi^2 + Delta^2)
    double u2_minus, v2_minus;    // v^2 built as 1 - u^2
    double u2_plus, v2_plus;
};

QuasiparticleFrame quasiparticle_frame(const SystemParams& params, double p);

// Fermi occupation; T = 0 is the exact step (1, 1/2, 0)
double fermi(double e, double temperature);
// d f / d E; identically 0 at T = 0
double fermi_deriv(double e, double temperature);

struct QuadratureReport {
    double value = 0.0;
    double refined_value = 0.0;  // panel-halved re-evaluation
    double rel_change = 0.0;
};

// net fermion density n = n_+ - n_-, Eq. with Sigma_p -> int d^3p/(2pi)^3
double number_density(const SystemParams& params);
QuadratureReport number_density_report(const SystemParams& params);

// RHS of the gap equation (the quantity that equals 1/g at self-consistency)
double gap_rhs(const SystemParams& params);
double gap_rhs(const SystemParams& params, double delta_value);

// solve the gap equation for Delta at given (m, mu, g, Lambda, T);
// returns the normal state (Delta = 0) when no positive root exists
SystemParams solve_gap(double m, double mu, double g, double lambda_cut,
                       double temperature);

struct FermiSurface {
    double k_f;
    double eps_f;
};
FermiSurface fermi_momentum(const SystemParams& params);

// k_F of the free gas at the same mu (integration breakpoint)
inline double kf_free(const SystemParams& p) {
    const double s = p.mu * p.mu - p.m * p.m;
    return s > 0 ? std::sqrt(s) : 0.0;
}

}  // namespace bcsresp
