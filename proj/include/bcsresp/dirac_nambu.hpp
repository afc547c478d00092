#pragma once

#include <Eigen/Dense>
#include <complex>

#include "bcsresp/equilibrium.hpp"
#include "bcsresp/types.hpp"

namespace bcsresp {

// Nambu (particle/hole) x Dirac basis; exact 8x8 numerics used as the
// brute-force oracle for everything the closed forms claim.
using Matrix8 = Eigen::Matrix<cplx, 8, 8>;
using Matrix4 = Eigen::Matrix<cplx, 4, 4>;

// Weyl-representation gamma matrices, charge conjugation, Nambu Pauli
// combinations and the generalized vertex set Sigma_hat.
struct AlgebraConstants {
    Matrix4 gamma[4];   // gamma^0..gamma^3 (upper index)
    Matrix4 gamma5;
    Matrix4 C;          // i gamma^0 gamma^2
    Matrix8 g0_hat;     // 1 (x) gamma^0
    Matrix8 sigma1_hat, sigma2_hat, sigma3_hat;  // sigma_i (x) 1
    Matrix8 vertex1;    // sigma_1 (x) i gamma_5
    Matrix8 vertex2;    // sigma_2 (x) i gamma_5
    Matrix8 vertex3[4]; // sigma_3 (x) gamma^mu

    AlgebraConstants();

    // max deviation over the Appendix-A identity set; used at startup and
    // in tests
    double identity_residual() const;
};

const AlgebraConstants& algebra();

Matrix4 energy_projector(const Vec3& p, double m, int sign);
Matrix8 lifted_projector(const Vec3& p, double m, int sign);

// E_hat = gamma^0(gamma.p + m) - mu sigma_3 - Delta gamma^0 i gamma_5 sigma_1
Matrix8 e_hat(const SystemParams& params, const Vec3& p);

// pole decomposition of the propagator: label -> (matrix, pole energy)
struct UvOperators {
    Matrix8 u_minus, v_minus, u_plus, v_plus;
    double e_minus, e_plus;
    // pole of each operator in the frequency plane
    // u_minus: +E-, v_minus: -E-, u_plus: -E+, v_plus: +E+
};
UvOperators uv_operators(const SystemParams& params, const Vec3& p);

Matrix8 inverse_propagator(const SystemParams& params, const Vec3& p,
                           cplx omega);

// assembled from the u/v operator decomposition; throws PoleProximity within
// 1e-9 m of a quasiparticle pole
Matrix8 propagator_closed_form(const SystemParams& params, const Vec3& p,
                               cplx omega);

// condition-number-reporting inverse
struct InversionResult {
    Matrix8 inverse;
    double condition;
};
InversionResult invert_reported(const Matrix8& a);

enum class Channel { Q11, Q22, Q12, Q13, Q23, Q33 };

// truncated Matsubara sum of Tr[S_i G(P+Q) S_j G(P)] with analytic 1/w^2 and
// 1/w^3 tail completion; the per-p response integrand before momentum
// integration. Requires T > 0 and a bosonic grid frequency Omega_l = 2 pi l T.
struct OracleResult {
    cplx value;
    double tail_estimate = 0.0;   // |S_N - S_{N/2}| Richardson gauge
    bool truncation_warning = false;
};
OracleResult qij_integrand_oracle(const SystemParams& params, const Vec3& p,
                                  const Vec3& q, int l, int i, int j,
                                  int mu_idx = -1, int nu_idx = -1,
                                  int n_matsubara = 4096);

}  // namespace bcsresp
