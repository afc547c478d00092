#include "bcsresp/dirac_nambu.hpp"

#include <cmath>

namespace bcsresp {

namespace {

const cplx I(0.0, 1.0);

Matrix4 kron22(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Matrix4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Matrix8 kron24(const Eigen::Matrix2cd& a, const Matrix4& b) {
    Matrix8 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

Eigen::Matrix2cd pauli(int k) {
    Eigen::Matrix2cd s;
    switch (k) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -I, I, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

}  // namespace

AlgebraConstants::AlgebraConstants() {
    const Eigen::Matrix2cd s0 = pauli(0);
    // Weyl (chiral) representation
    gamma[0] = kron22(pauli(1), s0);                 // [[0,I],[I,0]]
    for (int k = 1; k <= 3; ++k)
        gamma[k] = kron22(I * pauli(2), pauli(k));   // [[0,s],[-s,0]]
    gamma5 = kron22(-pauli(3), s0);                  // diag(-I, I)
    C = I * gamma[0] * gamma[2];

    g0_hat = kron24(s0, gamma[0]);
    sigma1_hat = kron24(pauli(1), Matrix4::Identity());
    sigma2_hat = kron24(pauli(2), Matrix4::Identity());
    sigma3_hat = kron24(pauli(3), Matrix4::Identity());
    vertex1 = kron24(pauli(1), I * gamma5);
    vertex2 = kron24(pauli(2), I * gamma5);
    for (int mu = 0; mu < 4; ++mu) vertex3[mu] = kron24(pauli(3), gamma[mu]);
}

double AlgebraConstants::identity_residual() const {
    double r = 0.0;
    auto upd = [&r](const Matrix4& m) { r = std::max(r, m.cwiseAbs().maxCoeff()); };
    const Matrix4 id = Matrix4::Identity();
    const double eta[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Matrix4 anti = gamma[mu] * gamma[nu] + gamma[nu] * gamma[mu];
            upd(anti - (mu == nu ? 2.0 * eta[mu] : 0.0) * id);
        }
    upd(gamma5 * gamma5 - id);
    upd(gamma[0] * gamma[0] - id);
    upd(C * C + id);
    upd(gamma5 * C - C * gamma5);
    for (int mu = 0; mu < 4; ++mu) {
        upd(C * gamma[mu].transpose() * C - gamma[mu]);
        upd(gamma[mu].conjugate() - gamma[0] * gamma[mu].transpose() * gamma[0]);
    }
    return r;
}

const AlgebraConstants& algebra() {
    static const AlgebraConstants a = [] {
        AlgebraConstants c;
        if (c.identity_residual() > 1e-14)
            throw NumericsError("Dirac algebra identities violated at startup");
        return c;
    }();
    return a;
}

Matrix4 energy_projector(const Vec3& p, double m, int sign) {
    const AlgebraConstants& A = algebra();
    const double eps = std::sqrt(dot3(p, p) + m * m);
    Matrix4 gp = Matrix4::Zero();
    for (int k = 0; k < 3; ++k) gp += p[k] * A.gamma[k + 1];
    Matrix4 out = 0.5 * (Matrix4::Identity() +
                         (sign / eps) * (A.gamma[0] * (gp + m * Matrix4::Identity())));
    return out;
}

Matrix8 lifted_projector(const Vec3& p, double m, int sign) {
    const Matrix4 lp = energy_projector(p, m, +1);
    const Matrix4 lm = energy_projector(p, m, -1);
    Matrix8 out = Matrix8::Zero();
    if (sign > 0) {
        out.block<4, 4>(0, 0) = lp;
        out.block<4, 4>(4, 4) = lm;
    } else {
        out.block<4, 4>(0, 0) = lm;
        out.block<4, 4>(4, 4) = lp;
    }
    return out;
}

Matrix8 e_hat(const SystemParams& params, const Vec3& p) {
    const AlgebraConstants& A = algebra();
    Matrix4 gp = Matrix4::Zero();
    for (int k = 0; k < 3; ++k) gp += p[k] * A.gamma[k + 1];
    const Matrix4 kin = A.gamma[0] * (gp + params.m * Matrix4::Identity());
    Matrix8 out = kron24(pauli(0), kin);
    out -= params.mu * kron24(pauli(3), Matrix4::Identity());
    out -= params.delta * kron24(pauli(1), A.gamma[0] * (I * A.gamma5));
    return out;
}

UvOperators uv_operators(const SystemParams& params, const Vec3& p) {
    const double pm = norm3(p);
    const QuasiparticleFrame f = quasiparticle_frame(params, pm);
    const Matrix8 Eh = e_hat(params, p);
    const Matrix8 Lp = lifted_projector(p, params.m, +1);
    const Matrix8 Lm = lifted_projector(p, params.m, -1);
    UvOperators uv{};
    uv.e_minus = f.e_minus;
    uv.e_plus = f.e_plus;
    uv.u_minus = (f.e_minus * Matrix8::Identity() + Eh) * Lp / (2.0 * f.e_minus);
    uv.v_minus = (f.e_minus * Matrix8::Identity() - Eh) * Lp / (2.0 * f.e_minus);
    uv.u_plus = (f.e_plus * Matrix8::Identity() - Eh) * Lm / (2.0 * f.e_plus);
    uv.v_plus = (f.e_plus * Matrix8::Identity() + Eh) * Lm / (2.0 * f.e_plus);
    return uv;
}

Matrix8 inverse_propagator(const SystemParams& params, const Vec3& p,
                           cplx omega) {
    const AlgebraConstants& A = algebra();
    Matrix8 out = omega * A.g0_hat;
    out += params.mu * kron24(pauli(3), A.gamma[0]);
    Matrix4 gp = Matrix4::Zero();
    for (int k = 0; k < 3; ++k) gp += p[k] * A.gamma[k + 1];
    out -= kron24(pauli(0), gp);
    out -= params.m * Matrix8::Identity();
    out += params.delta * kron24(pauli(1), I * A.gamma5);
    return out;
}

Matrix8 propagator_closed_form(const SystemParams& params, const Vec3& p,
                               cplx omega) {
    const UvOperators uv = uv_operators(params, p);
    const double guard = 1e-9 * params.m;
    for (double pole : {uv.e_minus, -uv.e_minus, -uv.e_plus, uv.e_plus})
        if (std::abs(omega - pole) < guard)
            throw PoleProximity("propagator evaluated too close to a pole");
    Matrix8 g = uv.u_minus / (omega - uv.e_minus) +
                uv.v_minus / (omega + uv.e_minus) +
                uv.u_plus / (omega + uv.e_plus) +
                uv.v_plus / (omega - uv.e_plus);
    return g * algebra().g0_hat;
}

InversionResult invert_reported(const Matrix8& a) {
    Eigen::JacobiSVD<Matrix8> svd(a);
    InversionResult r;
    r.condition = svd.singularValues()(0) / svd.singularValues()(7);
    r.inverse = a.inverse();
    return r;
}

namespace {

const Matrix8& vertex_of(int i, int idx) {
    const AlgebraConstants& A = algebra();
    if (i == 1) return A.vertex1;
    if (i == 2) return A.vertex2;
    return A.vertex3[idx];
}

}  // namespace

OracleResult qij_integrand_oracle(const SystemParams& params, const Vec3& p,
                                  const Vec3& q, int l, int i, int j,
                                  int mu_idx, int nu_idx, int n_matsubara) {
    if (params.temperature <= 0.0)
        throw ConfigError("matsubara oracle requires T > 0");
    const double T = params.temperature;
    const cplx Om(0.0, 2.0 * PI * l * T);
    const Vec3 pq = add3(p, q);
    const Matrix8& Si = vertex_of(i, mu_idx);
    const Matrix8& Sj = vertex_of(j, nu_idx);
    const AlgebraConstants& A = algebra();

    // subtracted asymptotics: G(P) ~ g0/(iw) + E_hat g0/(iw)^2 + ...
    const Matrix8 Ehp = e_hat(params, pq);
    const Matrix8 Eh = e_hat(params, p);
    const cplx a2 = (Si * A.g0_hat * Sj * A.g0_hat).trace();
    const cplx b2p = (Si * Ehp * A.g0_hat * Sj * A.g0_hat).trace();
    const cplx b2 = (Si * A.g0_hat * Sj * Eh * A.g0_hat).trace();
    const cplx c2pp = (Si * Ehp * Ehp * A.g0_hat * Sj * A.g0_hat).trace();
    const cplx c2pq = (Si * Ehp * A.g0_hat * Sj * Eh * A.g0_hat).trace();
    const cplx c2qq = (Si * A.g0_hat * Sj * Eh * Eh * A.g0_hat).trace();

    auto summand = [&](const cplx& wn) {
        const Matrix8 Gp = inverse_propagator(params, pq, wn + Om).inverse();
        const Matrix8 G = inverse_propagator(params, p, wn).inverse();
        cplx tr = (Si * Gp * Sj * G).trace();
        const cplx nu = wn + Om;
        tr -= a2 / (nu * wn) + b2p / (nu * nu * wn) + b2 / (nu * wn * wn);
        tr -= c2pp / (nu * nu * nu * wn) + c2pq / (nu * nu * wn * wn) +
              c2qq / (nu * wn * wn * wn);
        return tr;
    };

    auto partial = [&](int N) {
        cplx s = 0.0;
        for (int n = -N; n < N; ++n)
            s += summand(cplx(0.0, (2 * n + 1) * PI * T));
        return T * s;
    };

    const cplx s_half = partial(n_matsubara / 2);
    cplx s = s_half;
    {
        cplx extra = 0.0;
        for (int n = n_matsubara / 2; n < n_matsubara; ++n) {
            extra += summand(cplx(0.0, (2 * n + 1) * PI * T));
            extra += summand(cplx(0.0, -(2 * n + 1) * PI * T));
        }
        s += T * extra;
    }

    // analytic full sums of the subtracted pieces
    const double fp0 = -0.25 / T;  // f'(0)
    cplx tail;
    if (l == 0) {
        // T sum 1/(iw)^2 = f'(0); 1/(iw)^3 sums vanish; 1/(iw)^4 = 1/(48 T^3)
        const double s4 = 1.0 / (48.0 * T * T * T);
        tail = fp0 * a2 + s4 * (c2pp + c2pq + c2qq);
    } else {
        const cplx om2 = Om * Om;
        tail = (-fp0 / Om) * b2p + (fp0 / Om) * b2 +
               (-fp0 / om2) * c2pp + (2.0 * fp0 / om2) * c2pq +
               (-fp0 / om2) * c2qq;
    }

    OracleResult r;
    r.value = s + tail;
    r.tail_estimate = std::abs(s - s_half);
    r.truncation_warning = r.tail_estimate > 1e-6 * std::abs(r.value);
    return r;
}

}  // namespace bcsresp
