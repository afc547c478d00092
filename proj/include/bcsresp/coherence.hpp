#pragma once

#include <array>

#include "bcsresp/equilibrium.hpp"
#include "bcsresp/types.hpp"

namespace bcsresp {

// normalized kinematic factors A~ = A/(eps_{p+q} eps_p), B~ = B/(...) with
// A = eps'eps - eps^2 - p.q, B = eps'eps + eps^2 + p.q
struct KinematicFactors {
    double a_norm;
    double b_norm;
};
KinematicFactors kinematic_factors(const Vec3& p, const Vec3& q, double m);

// all rotationally covariant structures for one (p, q) pair
struct KinematicStructures {
    double eps_p, eps_pq;
    double a_norm, b_norm;
    Vec3 w_same;    // (eps' p + eps (p+q)) / (eps' eps)
    Vec3 w_mixed;   // ((p+q) eps - p eps') / (eps' eps)
    std::array<std::array<double, 3>, 3> t_same;   // (S + delta A)/(eps' eps)
    std::array<std::array<double, 3>, 3> t_mixed;  // -(S - delta B)/(eps' eps)
};
KinematicStructures kinematic_structures(const Vec3& p, const Vec3& q, double m);

// branch scalars at one momentum and branch: x = xi/E, d = Delta/E
struct BranchScalars {
    double x;
    double d;
};
BranchScalars branch_scalars(const QuasiparticleFrame& f, int branch_sign,
                             double delta);

// u/v pole labels; poles in frequency:
//   UMinus: +E-, VMinus: -E-, UPlus: -E+, VPlus: +E+
enum UvLabel : int { UMinus = 0, VMinus = 1, UPlus = 2, VPlus = 3 };
inline int label_branch(UvLabel l) { return (l == UMinus || l == VMinus) ? -1 : +1; }
inline bool label_is_v(UvLabel l) { return l == VMinus || l == VPlus; }
inline double label_pole(UvLabel l, const QuasiparticleFrame& f) {
    switch (l) {
        case UMinus: return +f.e_minus;
        case VMinus: return -f.e_minus;
        case UPlus: return -f.e_plus;
        default: return +f.e_plus;
    }
}

// scalar prefactors of one traced pair (X'(p+q), Y(p)); the structure each
// multiplies is noted (K = B~ on the same branch, A~ mixed; W, T likewise)
struct PairCoeffs {
    cplx c11;     // x K
    cplx c22;     // x K
    cplx c12;     // x K
    cplx c13_0;   // x K
    cplx c13_s;   // x W
    cplx c23_0;   // x K
    cplx c23_s;   // x W
    cplx c33_00;  // x K
    cplx c33_0s;  // x W  (0i and i0 components are equal)
    cplx c33_ss;  // x T
};
PairCoeffs pair_coeffs(UvLabel b, UvLabel a, const BranchScalars& sp,
                       const BranchScalars& s);

// the sixteen traced combinations for one (p, q) pair and one channel,
// matching Tr[S_i X(p+q) g0 S_j Y(p) g0] of the 8x8 algebra
struct CoherencePairSet {
    // indexed [label at p+q][label at p]
    std::array<std::array<cplx, 4>, 4> scalar{};    // channels 11, 22, 12
    std::array<std::array<Vec4c, 4>, 4> vector4{};  // channels 13, 23
    std::array<std::array<Mat4c, 4>, 4> tensor{};   // channel 33
    int channel_i = 0, channel_j = 0;
};
CoherencePairSet coherence_set(const SystemParams& params, const Vec3& p,
                               const Vec3& q, int i, int j);

}  // namespace bcsresp
