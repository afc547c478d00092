#pragma once

#include <optional>
#include <vector>

#include "bcsresp/coherence.hpp"
#include "bcsresp/equilibrium.hpp"
#include "bcsresp/quadrature.hpp"
#include "bcsresp/types.hpp"

namespace bcsresp {

// external boson four-momentum; q is taken along +z for all assembled
// response integrals (azimuthal reduction), rotation is left to callers
struct FourMomentum {
    cplx omega;                 // i Omega_l on the Matsubara axis, w + i delta on the real axis
    double qz = 0.0;            // |q|, along +z
    double delta_broadening = 0.0;
    bool matsubara = true;

    static FourMomentum matsubara_point(int l, double temperature, double qz) {
        FourMomentum Q;
        Q.omega = cplx(0.0, 2.0 * PI * l * temperature);
        Q.qz = qz;
        Q.matsubara = true;
        return Q;
    }
    static FourMomentum real_axis(double w, double qz, double delta) {
        FourMomentum Q;
        Q.omega = cplx(w, delta);
        Q.qz = qz;
        Q.delta_broadening = delta;
        Q.matsubara = false;
        return Q;
    }
    // covariant contraction q_mu X^mu = omega X^0 - q.X
    cplx contract(const Vec4c& x) const { return omega * x[0] - qz * x[3]; }
};

struct ResponseSettings {
    QuadOptions quad{1e-10, 1e-13, 32, 400000};
    // response loop integrals run to p_max_factor * lambda_cut; the gap
    // counterterm and the vacuum subtraction keep the Ward identities exact,
    // the factor controls only the small residual tails (which decay ~ 1/P^2)
    double p_max_factor = 50.0;
    bool vacuum_subtraction = true;  // 33 block regularization (plus contact term)
};

// 6x6 response matrix over {Delta_1, Delta_2, A_0..A_3}; independent blocks
// stored once, the remaining entries follow from the index symmetry
// Q_ji = (-1)^{d2i+d2j} Q_ij
struct ResponseMatrix {
    cplx q11{}, q22{}, q12{};
    Vec4c q13{}, q23{};
    Mat4c q33{};
    cplx qt11{}, qt22{};  // 2/g + Q_ii
    double two_over_g = 0.0;
    FourMomentum momentum{};
    SystemParams params{};

    cplx q21() const { return -q12; }
    Vec4c q31() const { return q13; }
    Vec4c q32() const {
        Vec4c v = q23;
        for (auto& z : v) z = -z;
        return v;
    }
    // dense 6x6 in the {D1, D2, A_nu} ordering (untilded diagonal)
    std::array<std::array<cplx, 6>, 6> dense() const;
};

// all independent integrand components at one loop point, plus counterterms;
// used by the adaptive driver
struct ResponseCell {
    // I11+ct, I22+ct, I12, I13_0, I13_z, I23_0, I23_z, I33_00, I33_0z,
    // I33_zz, I33_xx
    static constexpr int n = 11;
    std::array<cplx, n> v{};
    ResponseCell operator+(const ResponseCell& o) const {
        ResponseCell r;
        for (int i = 0; i < n; ++i) r.v[i] = v[i] + o.v[i];
        return r;
    }
    ResponseCell operator-(const ResponseCell& o) const {
        ResponseCell r;
        for (int i = 0; i < n; ++i) r.v[i] = v[i] - o.v[i];
        return r;
    }
    ResponseCell operator*(double s) const {
        ResponseCell r;
        for (int i = 0; i < n; ++i) r.v[i] = v[i] * s;
        return r;
    }
};

enum CellIndex {
    C11 = 0, C22, C12, C13_0, C13_Z, C23_0, C23_Z, C33_00, C33_0Z, C33_ZZ,
    C33_XX
};

// 16-pole closed-form integrand at one (|p|, cos theta) reduced loop point;
// includes the two-momentum gap counterterm on the 11/22 components and,
// when subtract_vacuum, the pointwise T=Delta=0, mu=m subtraction of the 33
// components
ResponseCell response_cell(const SystemParams& params, const FourMomentum& Q,
                           double p, double c, bool subtract_vacuum);

ResponseMatrix assemble_response_matrix(const SystemParams& params,
                                        const FourMomentum& Q,
                                        const ResponseSettings& settings = {});

// single-channel access per the module contract; computed from the shared
// assembly
cplx qij_scalar(const SystemParams& params, const FourMomentum& Q, int i,
                int j, const ResponseSettings& settings = {});
Vec4c qij_vector(const SystemParams& params, const FourMomentum& Q, int i,
                 const ResponseSettings& settings = {});
Mat4c qij_tensor(const SystemParams& params, const FourMomentum& Q,
                 const ResponseSettings& settings = {});

// light real-axis path for collective-mode work at T=0, delta=0: returns
// (Qt11, Qt22, Q12) only
struct PairChannelValues {
    cplx qt11, qt22, q12;
};
PairChannelValues pair_channels(const SystemParams& params,
                                const FourMomentum& Q,
                                const ResponseSettings& settings = {});

// Qt'22 = Qt22 - Q12 Q21 / Qt11, real on the real axis below the continuum
double qtilde22_prime(const SystemParams& params, double omega, double qz,
                      const ResponseSettings& settings = {});

}  // namespace bcsresp
