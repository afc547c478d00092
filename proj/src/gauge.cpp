#include "bcsresp/gauge.hpp"

#include <algorithm>
#include <cmath>

namespace bcsresp {

namespace {

double maxmag(std::initializer_list<cplx> xs) {
    double m = 0.0;
    for (const cplx& x : xs) m = std::max(m, std::abs(x));
    return m;
}

cplx det2(cplx a, cplx b, cplx c, cplx d) { return a * d - b * c; }

}  // namespace

GwiResiduals gwi_residuals(const ResponseMatrix& R) {
    const FourMomentum& Q = R.momentum;
    const cplx twoid(0.0, 2.0 * R.params.delta);
    const Vec4c q31 = R.q31(), q32 = R.q32();

    GwiResiduals out{};
    {
        const cplx lhs = Q.contract(q31);
        const cplx rhs = twoid * R.q21();
        out.r31 = std::abs(lhs + rhs) /
                  std::max(maxmag({Q.omega * q31[0], Q.qz * q31[3], rhs}), 1e-300);
    }
    {
        const cplx lhs = Q.contract(q32);
        const cplx rhs = twoid * R.qt22;
        out.r32 = std::abs(lhs + rhs) /
                  std::max(maxmag({Q.omega * q32[0], Q.qz * q32[3], rhs}), 1e-300);
    }
    {
        double worst = 0.0;
        for (int nu = 0; nu < 4; ++nu) {
            const cplx lhs = Q.omega * R.q33[0][nu] - Q.qz * R.q33[3][nu];
            const cplx rhs = twoid * R.q23[nu];
            const double scale = maxmag(
                {Q.omega * R.q33[0][nu], Q.qz * R.q33[3][nu], rhs});
            if (scale < 1e-300) continue;
            worst = std::max(worst, std::abs(lhs + rhs) / scale);
        }
        out.r33 = worst;
    }
    return out;
}

InducedFluctuations induced_fluctuations(const ResponseMatrix& R,
                                         const Vec4c& a_potential) {
    InducedFluctuations out{};
    const cplx q21 = R.q21();
    const cplx D = R.qt11 * R.qt22 - R.q12 * q21;
    const double scale =
        std::max(std::abs(R.qt11 * R.qt22), std::abs(R.q12 * q21));
    if (std::abs(D) < 1e-12 * std::max(scale, 1e-300)) {
        out.at_pole = true;
        out.pole.abs_denominator = std::abs(D);
        return out;
    }
    cplx n1 = 0.0, n2 = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
        n1 += (R.q13[nu] * R.qt22 - R.q23[nu] * R.q12) * a_potential[nu];
        n2 += (R.q23[nu] * R.qt11 - R.q13[nu] * q21) * a_potential[nu];
    }
    out.delta1 = -n1 / D;
    out.delta2 = -n2 / D;
    return out;
}

KernelTensor full_kernel(const ResponseMatrix& R) {
    KernelTensor K{};
    K.momentum = R.momentum;
    K.k0 = R.q33;
    const cplx q21 = R.q21();
    const Vec4c q31 = R.q31(), q32 = R.q32();
    const cplx D = R.qt11 * R.qt22 - R.q12 * q21;
    const double scale =
        std::max(std::abs(R.qt11 * R.qt22), std::abs(R.q12 * q21));
    if (std::abs(D) < 1e-12 * std::max(scale, 1e-300)) {
        K.at_pole = true;
        K.pole.abs_denominator = std::abs(D);
        return K;
    }
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const cplx num = R.qt11 * q32[mu] * R.q23[nu] +
                             R.qt22 * q31[mu] * R.q13[nu] -
                             R.q12 * q31[mu] * R.q23[nu] -
                             q21 * q32[mu] * R.q13[nu];
            K.dk[mu][nu] = -num / D;
            K.k[mu][nu] = K.k0[mu][nu] + K.dk[mu][nu];
        }

    // sequential elimination: K'0 = Q33 - Q31 Q13 / Qt11, then the primed
    // Delta_2 block
    const cplx qt22p = R.qt22 - R.q12 * q21 / R.qt11;
    double diff = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            const cplx k0p = R.q33[mu][nu] - q31[mu] * R.q13[nu] / R.qt11;
            const cplx q32p = q32[mu] - (R.q12 / R.qt11) * q31[mu];
            const cplx q23p = R.q23[nu] - (q21 / R.qt11) * R.q13[nu];
            K.k_two_step[mu][nu] = k0p - q32p * q23p / qt22p;
            diff = std::max(diff,
                            std::abs(K.k[mu][nu] - K.k_two_step[mu][nu]));
        }
    K.construction_diff = diff;
    return K;
}

double KernelTensor::conservation_first() const {
    double worst = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
        const cplx lhs = momentum.omega * k[0][nu] - momentum.qz * k[3][nu];
        const double scale = std::max(
            {std::abs(momentum.omega * k[0][nu]), std::abs(momentum.qz * k[3][nu]),
             1e-300});
        worst = std::max(worst, std::abs(lhs) / scale);
    }
    return worst;
}

double KernelTensor::conservation_second() const {
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        const cplx lhs = momentum.omega * k[mu][0] - momentum.qz * k[mu][3];
        const double scale = std::max(
            {std::abs(momentum.omega * k[mu][0]), std::abs(momentum.qz * k[mu][3]),
             1e-300});
        worst = std::max(worst, std::abs(lhs) / scale);
    }
    return worst;
}

InvariantVertex invariant_vertex(const ResponseMatrix& R) {
    InvariantVertex out{};
    const cplx q21 = R.q21();
    const cplx D = R.qt11 * R.qt22 - R.q12 * q21;
    const double dscale =
        std::max(std::abs(R.qt11 * R.qt22), std::abs(R.q12 * q21));
    if (std::abs(D) < 1e-12 * std::max(dscale, 1e-300)) {
        out.at_pole = true;
        out.pole.abs_denominator = std::abs(D);
        return out;
    }
    for (int mu = 0; mu < 4; ++mu) {
        out.pi1[mu] = det2(R.q13[mu], R.q12, R.q23[mu], R.qt22) / D;
        out.pi2[mu] = det2(R.q13[mu], R.qt11, R.q23[mu], q21) / D;
    }
    const FourMomentum& Q = R.momentum;
    const cplx twoid(0.0, 2.0 * R.params.delta);
    const cplx c1 = Q.contract(out.pi1);
    const cplx c2 = Q.contract(out.pi2);
    const double s1 = std::max(
        maxmag({Q.omega * out.pi1[0], Q.qz * out.pi1[3]}), 1e-300);
    out.residual_pi1 = std::abs(c1) / s1;
    const double s2 = std::max(
        maxmag({Q.omega * out.pi2[0], Q.qz * out.pi2[3], twoid}), 1e-300);
    out.residual_pi2 = std::abs(c2 + twoid) / s2;

    // K^{mu nu} = Q33 - Pi1^mu Q13^nu - Pi2^mu Q23^nu (vertex route)
    const KernelTensor K = full_kernel(R);
    double diff = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            out.kernel[mu][nu] = R.q33[mu][nu] - out.pi1[mu] * R.q13[nu] -
                                 out.pi2[mu] * R.q23[nu];
            diff = std::max(diff, std::abs(out.kernel[mu][nu] - K.k[mu][nu]));
        }
    out.kernel_diff = diff;
    return out;
}

}  // namespace bcsresp
