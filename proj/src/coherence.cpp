#include "bcsresp/coherence.hpp"

#include <cmath>

namespace bcsresp {

KinematicFactors kinematic_factors(const Vec3& p, const Vec3& q, double m) {
    const Vec3 pq = add3(p, q);
    const double eps_p = std::sqrt(dot3(p, p) + m * m);
    const double eps_pq = std::sqrt(dot3(pq, pq) + m * m);
    const double den = eps_pq * eps_p;
    const double pdq = dot3(p, q);
    KinematicFactors k{};
    k.a_norm = (den - eps_p * eps_p - pdq) / den;
    k.b_norm = (den + eps_p * eps_p + pdq) / den;
    return k;
}

KinematicStructures kinematic_structures(const Vec3& p, const Vec3& q,
                                         double m) {
    KinematicStructures s{};
    const Vec3 pq = add3(p, q);
    s.eps_p = std::sqrt(dot3(p, p) + m * m);
    s.eps_pq = std::sqrt(dot3(pq, pq) + m * m);
    const double den = s.eps_pq * s.eps_p;
    const double pdq = dot3(p, q);
    const double A = den - s.eps_p * s.eps_p - pdq;
    const double B = den + s.eps_p * s.eps_p + pdq;
    s.a_norm = A / den;
    s.b_norm = B / den;
    for (int k = 0; k < 3; ++k) {
        s.w_same[k] = (s.eps_pq * p[k] + s.eps_p * pq[k]) / den;
        s.w_mixed[k] = (pq[k] * s.eps_p - p[k] * s.eps_pq) / den;
    }
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            const double S = pq[k] * p[l] + pq[l] * p[k];
            const double d = (k == l) ? 1.0 : 0.0;
            s.t_same[k][l] = (S + d * A) / den;
            s.t_mixed[k][l] = -(S - d * B) / den;
        }
    return s;
}

BranchScalars branch_scalars(const QuasiparticleFrame& f, int branch_sign,
                             double delta) {
    const double xi = branch_sign < 0 ? f.xi_minus : f.xi_plus;
    const double e = branch_sign < 0 ? f.e_minus : f.e_plus;
    BranchScalars s{};
    if (e == 0.0) {
        s.x = 0.0;
        s.d = 0.0;
    } else {
        s.x = xi / e;
        s.d = delta / e;
    }
    return s;
}

PairCoeffs pair_coeffs(UvLabel b, UvLabel a, const BranchScalars& sp_in,
                       const BranchScalars& s_in) {
    // v-labels flip the sign of (x, d) on their side
    double xp = sp_in.x, dp = sp_in.d, x = s_in.x, d = s_in.d;
    if (label_is_v(b)) { xp = -xp; dp = -dp; }
    if (label_is_v(a)) { x = -x; d = -d; }
    const bool same = label_branch(b) == label_branch(a);
    const double sgnb = label_branch(b) < 0 ? -1.0 : 1.0;
    const cplx I(0.0, 1.0);

    PairCoeffs c{};
    if (same) {
        c.c11 = 0.5 * (1.0 - xp * x + dp * d);
        c.c22 = 0.5 * (1.0 - xp * x - dp * d);
        c.c12 = 0.5 * I * (x - xp);
        c.c13_0 = sgnb * 0.5 * (xp * d + dp * x);
        c.c13_s = -0.5 * (d + dp);
        c.c23_0 = sgnb * 0.5 * I * (d - dp);
        c.c23_s = 0.5 * I * (dp * x - xp * d);
        c.c33_00 = 0.5 * (1.0 + xp * x - dp * d);
        c.c33_ss = 0.5 * (1.0 + xp * x + dp * d);
    } else {
        c.c11 = 0.5 * (1.0 - xp * x - dp * d);
        c.c22 = 0.5 * (1.0 - xp * x + dp * d);
        c.c12 = 0.5 * I * (x - xp);
        c.c13_0 = -sgnb * 0.5 * (xp * d - dp * x);
        c.c13_s = 0.5 * (d - dp);
        c.c23_0 = -sgnb * 0.5 * I * (d + dp);
        c.c23_s = 0.5 * I * (xp * d + dp * x);
        c.c33_00 = 0.5 * (1.0 + xp * x + dp * d);
        c.c33_ss = 0.5 * (1.0 + xp * x - dp * d);
    }
    c.c33_0s = -sgnb * 0.5 * (x + xp);
    return c;
}

CoherencePairSet coherence_set(const SystemParams& params, const Vec3& p,
                               const Vec3& q, int i, int j) {
    CoherencePairSet out;
    out.channel_i = i;
    out.channel_j = j;
    const KinematicStructures ks = kinematic_structures(p, q, params.m);
    const Vec3 pq = add3(p, q);
    const QuasiparticleFrame fp = quasiparticle_frame(params, norm3(pq));
    const QuasiparticleFrame f = quasiparticle_frame(params, norm3(p));

    for (int bi = 0; bi < 4; ++bi)
        for (int ai = 0; ai < 4; ++ai) {
            const UvLabel b = static_cast<UvLabel>(bi);
            const UvLabel a = static_cast<UvLabel>(ai);
            const BranchScalars sp = branch_scalars(fp, label_branch(b), params.delta);
            const BranchScalars sa = branch_scalars(f, label_branch(a), params.delta);
            const PairCoeffs c = pair_coeffs(b, a, sp, sa);
            const bool same = label_branch(b) == label_branch(a);
            const double K = same ? ks.b_norm : ks.a_norm;
            const Vec3& W = same ? ks.w_same : ks.w_mixed;
            const auto& T = same ? ks.t_same : ks.t_mixed;

            if (i == 1 && j == 1) out.scalar[bi][ai] = c.c11 * K;
            if (i == 2 && j == 2) out.scalar[bi][ai] = c.c22 * K;
            if (i == 1 && j == 2) out.scalar[bi][ai] = c.c12 * K;
            if ((i == 1 || i == 2) && j == 3) {
                Vec4c v{};
                v[0] = (i == 1 ? c.c13_0 : c.c23_0) * K;
                const cplx cs = (i == 1 ? c.c13_s : c.c23_s);
                for (int k = 0; k < 3; ++k) v[k + 1] = cs * W[k];
                out.vector4[bi][ai] = v;
            }
            if (i == 3 && j == 3) {
                Mat4c t{};
                t[0][0] = c.c33_00 * K;
                for (int k = 0; k < 3; ++k) {
                    t[0][k + 1] = c.c33_0s * W[k];
                    t[k + 1][0] = t[0][k + 1];
                    for (int l = 0; l < 3; ++l)
                        t[k + 1][l + 1] = c.c33_ss * T[k][l];
                }
                out.tensor[bi][ai] = t;
            }
        }
    return out;
}

}  // namespace bcsresp
