#pragma once

#include "bcsresp/response.hpp"
#include "bcsresp/types.hpp"

namespace bcsresp {

// generalized external momentum q_hat = (0, 2i Delta, q_mu) acting on the
// {Delta_1, Delta_2, A_mu} rows
struct GeneralizedMomentum {
    cplx second;        // 2 i Delta, first component exactly 0
    FourMomentum q;
    static GeneralizedMomentum from(const ResponseMatrix& R) {
        return {cplx(0.0, 2.0 * R.params.delta), R.momentum};
    }
};

// normalized residuals of the three generalized Ward identities
struct GwiResiduals {
    double r31;   // |q.Q31 + 2iD Q21| / max-term
    double r32;   // |q.Q32 + 2iD Qt22| / max-term
    double r33;   // max_nu |q.Q33^nu + 2iD Q23^nu| / max-term
};
GwiResiduals gwi_residuals(const ResponseMatrix& R);

// collective-mode pole outcome: |D| below threshold is physics, not failure
struct CollectiveModePole {
    double abs_denominator;
};

struct InducedFluctuations {
    cplx delta1, delta2;
    bool at_pole = false;
    CollectiveModePole pole{};
};
// order-parameter response to an external potential A_nu (covariant
// components, index down)
InducedFluctuations induced_fluctuations(const ResponseMatrix& R,
                                         const Vec4c& a_potential);

struct KernelTensor {
    Mat4c k0;    // Q33 block
    Mat4c dk;    // collective-mode part, Eq. (dK) form
    Mat4c k;     // k0 + dk
    Mat4c k_two_step;         // K'0 + dK' construction
    double construction_diff; // max |k - k_two_step|
    bool at_pole = false;
    CollectiveModePole pole{};
    FourMomentum momentum{};
    // normalized |q_mu K^{mu nu}| (first slot) and |K^{mu nu} q_nu| (second)
    double conservation_first() const;
    double conservation_second() const;
};
KernelTensor full_kernel(const ResponseMatrix& R);

struct InvariantVertex {
    Vec4c pi1, pi2;
    double residual_pi1;      // |q_mu Pi1^mu| normalized
    double residual_pi2;      // |q_mu Pi2^mu + 2iD| normalized
    Mat4c kernel;             // K via the vertex route
    double kernel_diff;       // max entrywise |K_vertex - K_dK|
    bool at_pole = false;
    CollectiveModePole pole{};
};
InvariantVertex invariant_vertex(const ResponseMatrix& R);

}  // namespace bcsresp
