#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bcsresp/dirac_nambu.hpp"
#include "bcsresp/response.hpp"

using namespace bcsresp;

namespace {

SystemParams consistent_state() {
    SystemParams p;
    p.m = 1.0;
    p.mu = 1.2;
    p.delta = 0.1;
    p.lambda_cut = 10.0;
    p.temperature = 0.02;
    p.g = 1.0 / gap_rhs(p);
    return p;
}

// bare 16-pole cell (no counterterm, no subtraction) at a general (p, c)
// reduced point by re-deriving it from the coherence API; cross-checks the
// reduced structures in response_cell
cplx oracle_cell(const SystemParams& st, const FourMomentum& Q, const Vec3& p,
                 int i, int j, int mu_idx, int nu_idx, int N) {
    const Vec3 q = {0.0, 0.0, Q.qz};
    int l = static_cast<int>(
        std::lround(Q.omega.imag() / (2.0 * PI * st.temperature)));
    return qij_integrand_oracle(st, p, q, l, i, j, mu_idx, nu_idx, N).value;
}

}  // namespace

TEST_CASE("closed-form integrand equals the matsubara trace oracle") {
    const SystemParams st = consistent_state();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> up(0.1, 2.5);
    std::uniform_real_distribution<double> uc(-0.95, 0.95);
    std::uniform_real_distribution<double> uq(0.1, 0.8);
    std::uniform_int_distribution<int> ul(-4, 4);

    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        const double pm = up(rng), c = uc(rng), q = uq(rng);
        const int l = ul(rng);
        const FourMomentum Q =
            FourMomentum::matsubara_point(l, st.temperature, q);
        const ResponseCell cell = response_cell(st, Q, pm, c, false);
        const Vec3 pv = {pm * std::sqrt(1.0 - c * c), 0.0, pm * c};

        struct Probe {
            int idx, i, j, mu, nu;
        };
        // the cell carries the gap counterterm on 11/22; remove it before
        // comparing against the bare trace oracle
        const double pqmag =
            std::sqrt(pm * pm + q * q + 2.0 * pm * q * c);
        auto gi = [&](double x) {
            const QuasiparticleFrame f = quasiparticle_frame(st, x);
            return (1.0 - 2.0 * fermi(f.e_minus, st.temperature)) / f.e_minus +
                   (1.0 - 2.0 * fermi(f.e_plus, st.temperature)) / f.e_plus;
        };
        const double ct2 = gi(pm) + gi(pqmag);

        const Probe probes[] = {
            {C11, 1, 1, -1, -1}, {C22, 2, 2, -1, -1}, {C12, 1, 2, -1, -1},
            {C13_0, 1, 3, -1, 0}, {C13_Z, 1, 3, -1, 3}, {C23_0, 2, 3, -1, 0},
            {C23_Z, 2, 3, -1, 3}, {C33_00, 3, 3, 0, 0}, {C33_0Z, 3, 3, 0, 3},
            {C33_ZZ, 3, 3, 3, 3}};
        // entries that vanish identically (frequency parity at l = 0) are
        // compared against the magnitude of the channel family at this sample
        double sample_scale = 0.0;
        for (const Probe& pr : probes)
            sample_scale = std::max(sample_scale, std::abs(cell.v[pr.idx]));
        for (const Probe& pr : probes) {
            cplx closed = cell.v[pr.idx];
            if (pr.idx == C11 || pr.idx == C22) closed -= ct2;
            const cplx orc = oracle_cell(st, Q, pv, pr.i, pr.j, pr.mu, pr.nu, 4096);
            const double scale = std::max(
                {std::abs(closed), std::abs(orc), 1e-6 * sample_scale, 1e-12});
            CHECK(std::abs(closed - orc) / scale < 1e-6);
            ++checked;
        }
    }
    CHECK(checked >= 50 * 10);
}

TEST_CASE("channel (1,1) equals (2,2) in the normal state") {
    SystemParams st = consistent_state();
    st.delta = 0.0;
    st.g = 0.0;
    const Vec3 p = {0.7, 0.0, 0.9};
    const Vec3 q = {0.0, 0.0, 0.4};
    const OracleResult a = qij_integrand_oracle(st, p, q, 2, 1, 1, -1, -1, 512);
    const OracleResult b = qij_integrand_oracle(st, p, q, 2, 2, 2, -1, -1, 512);
    CHECK(std::abs(a.value - b.value) < 1e-9 * std::abs(a.value));
}

TEST_CASE("response matrix symmetries on the matsubara axis") {
    const SystemParams st = consistent_state();
    ResponseSettings rs;
    rs.quad.rel_tol = 1e-8;
    const FourMomentum Q = FourMomentum::matsubara_point(2, st.temperature, 0.37);
    const ResponseMatrix R = assemble_response_matrix(st, Q, rs);

    // four-momentum parity: Q_ij(Q) = (-1)^{d2i+d2j} Q_ij(-Q)
    const FourMomentum Qm =
        FourMomentum::matsubara_point(-2, st.temperature, -0.37);
    // (-q along z is the same reduced geometry with q -> -q)
    FourMomentum Qm2 = Qm;
    const ResponseMatrix Rm = assemble_response_matrix(st, Qm2, rs);
    const double tol = 1e-6;
    CHECK(std::abs(R.q11 - Rm.q11) < tol * std::abs(R.q11));
    CHECK(std::abs(R.q22 - Rm.q22) < tol * std::abs(R.q22));
    CHECK(std::abs(R.q12 + Rm.q12) < tol * std::max(std::abs(R.q12), 1e-10));
    for (int nu = 0; nu < 4; ++nu) {
        CHECK(std::abs(R.q13[nu] - Rm.q13[nu]) <
              tol * std::max(std::abs(R.q13[nu]), 1e-10));
        CHECK(std::abs(R.q23[nu] + Rm.q23[nu]) <
              tol * std::max(std::abs(R.q23[nu]), 1e-10));
    }

    // frequency parity at fixed q: even/odd per the channel table
    const FourMomentum Qf =
        FourMomentum::matsubara_point(-2, st.temperature, 0.37);
    const ResponseMatrix Rf = assemble_response_matrix(st, Qf, rs);
    CHECK(std::abs(R.q11 - Rf.q11) < tol * std::abs(R.q11));
    CHECK(std::abs(R.q22 - Rf.q22) < tol * std::abs(R.q22));
    CHECK(std::abs(R.q12 + Rf.q12) < tol * std::max(std::abs(R.q12), 1e-10));
    CHECK(std::abs(R.q13[0] - Rf.q13[0]) <
          tol * std::max(std::abs(R.q13[0]), 1e-10));
    CHECK(std::abs(R.q13[3] + Rf.q13[3]) <
          tol * std::max(std::abs(R.q13[3]), 1e-10));
    CHECK(std::abs(R.q23[0] + Rf.q23[0]) <
          tol * std::max(std::abs(R.q23[0]), 1e-10));
    CHECK(std::abs(R.q23[3] - Rf.q23[3]) <
          tol * std::max(std::abs(R.q23[3]), 1e-10));
    CHECK(std::abs(R.q33[0][0] - Rf.q33[0][0]) <
          tol * std::abs(R.q33[0][0]));
    CHECK(std::abs(R.q33[3][3] - Rf.q33[3][3]) <
          tol * std::abs(R.q33[3][3]));
    CHECK(std::abs(R.q33[0][3] + Rf.q33[0][3]) <
          tol * std::max(std::abs(R.q33[0][3]), 1e-10));

    // continuation consistency: real-axis evaluation at w = i Omega_l, d = 0
    // reproduces the matsubara value
    FourMomentum Qc;
    Qc.omega = Q.omega;
    Qc.qz = Q.qz;
    Qc.matsubara = false;
    const ResponseMatrix Rc = assemble_response_matrix(st, Qc, rs);
    CHECK(std::abs(R.qt22 - Rc.qt22) < 1e-9 * std::abs(R.qt22) + 1e-12);
    CHECK(std::abs(R.q33[3][3] - Rc.q33[3][3]) < 1e-9 * std::abs(R.q33[3][3]));
}

TEST_CASE("Q12 vanishes at zero frequency") {
    const SystemParams st = consistent_state();
    ResponseSettings rs;
    rs.quad.rel_tol = 1e-9;
    for (double q : {0.2, 0.7}) {
        const FourMomentum Q = FourMomentum::matsubara_point(0, st.temperature, q);
        const ResponseMatrix R = assemble_response_matrix(st, Q, rs);
        CHECK(std::abs(R.q12) < 1e-10 * std::abs(R.qt11));
        CHECK(std::abs(R.q23[0]) < 1e-10 * std::abs(R.qt11));
        CHECK(std::abs(R.q13[3]) < 1e-10 * std::abs(R.qt11));
        CHECK(std::abs(R.q33[0][3]) < 1e-10 * std::abs(R.q33[3][3]));
    }
}

TEST_CASE("Qt22 vanishes at zero four-momentum at self-consistency") {
    const SystemParams st = consistent_state();
    ResponseSettings rs;
    const FourMomentum Q = FourMomentum::matsubara_point(0, st.temperature, 0.0);
    const ResponseMatrix R = assemble_response_matrix(st, Q, rs);
    CHECK(std::abs(R.qt22) < 1e-6 * R.two_over_g);
}

TEST_CASE("pairing channels decouple in the normal symmetric state") {
    SystemParams st;
    st.m = 1.0;
    st.mu = 0.0;
    st.delta = 0.0;
    st.g = 0.0;
    st.lambda_cut = 6.0;
    st.temperature = 0.05;
    ResponseSettings rs;
    rs.quad.rel_tol = 1e-8;
    const FourMomentum Q = FourMomentum::matsubara_point(1, st.temperature, 0.3);
    const ResponseMatrix R = assemble_response_matrix(st, Q, rs);
    CHECK(std::abs(R.q12) < 1e-10);
    for (int nu = 0; nu < 4; ++nu) {
        CHECK(std::abs(R.q13[nu]) < 1e-10);
        CHECK(std::abs(R.q23[nu]) < 1e-10);
    }
}
