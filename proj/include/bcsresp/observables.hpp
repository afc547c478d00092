#pragma once

#include <vector>

#include "bcsresp/response.hpp"
#include "bcsresp/types.hpp"

namespace bcsresp {

struct DispersionPoint {
    double q;
    double omega;      // mode frequency, below the two-quasiparticle continuum
    double residual;   // |Qt'22(omega, q)| at the returned root
};

// bisects Qt'22(omega, q) for its sub-continuum zero at T = 0, delta = 0
DispersionPoint goldstone_point(const SystemParams& params, double q,
                                const ResponseSettings& settings = {});
std::vector<DispersionPoint> goldstone_dispersion(
    const SystemParams& params, const std::vector<double>& q_list,
    const ResponseSettings& settings = {});

struct SoundSpeedFit {
    double c_s;
    double k_f, eps_f, v_f;    // v_f = k_f / eps_f (group velocity at the FS)
    std::vector<DispersionPoint> points;
};
// linear fit through the origin over three small q values
SoundSpeedFit fit_sound_speed(const SystemParams& params,
                              const ResponseSettings& settings = {});

struct CompressibilityReport {
    double dn_dmu_eos;        // thermodynamic route, Eq.-(DSus)-type closed form
    double dn_dmu_response;   // -K^00(0, q->0) from the static response limits
    double kappa;             // n^-2 dn/dmu
    double rel_diff;
};
CompressibilityReport compressibility(const SystemParams& params);

// T = 0 only; both routes separately
double compressibility_eos(const SystemParams& params);
double compressibility_response(const SystemParams& params);

// static q->0 limits entering the response route (also used as test oracles)
struct StaticLimits {
    double s3;        // Sigma_p (1/E-^3 + 1/E+^3)
    double sx;        // Sigma_p (xi-/E-^3 - xi+/E+^3)
    double q11;       // Q11(0, q->0) = -2 Sigma_p (xi-^2/E-^3 + xi+^2/E+^3)
    double qt11;      // 2/g + q11
    double q00_33;    // -2 Delta^2 s3
    double q0_13;     // -2 Delta sx
};
StaticLimits static_limits(const SystemParams& params);

struct MeissnerReport {
    double k_l;        // q->0 longitudinal-structure kernel (Landau f' term)
    double k_t;        // q->0 transverse kernel after vacuum subtraction
    double n_s;        // nonrelativistic superfluid density (London form)
    double n_nr;       // nonrelativistic fermion number
    double n_total;    // from number_density
    bool nonrelativistic_ok;  // k_F/m < 0.3
};
MeissnerReport meissner_kernel(const SystemParams& params);

// J = -(2/m) n_s A for a transverse potential
Vec3 london_current(const SystemParams& params, const Vec3& a_transverse);

}  // namespace bcsresp
