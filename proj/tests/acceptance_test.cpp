// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "bcsresp/dirac_nambu.hpp"
#include "bcsresp/gauge.hpp"
#include "bcsresp/observables.hpp"

using namespace bcsresp;

namespace {

int failures = 0;

void report(int crit, const char* what, bool pass, double value, double tol) {
    std::printf("%s  criterion %d: %-52s  value %.3e  tol %.1e\n",
                pass ? "PASS" : "FAIL", crit, what, value, tol);
    if (!pass) ++failures;
}

SystemParams reference_state(double temperature) {
    SystemParams p;
    p.m = 1.0;
    p.mu = 1.2;
    p.delta = 0.1;
    p.lambda_cut = 10.0;
    p.temperature = temperature;
    p.g = 1.0 / gap_rhs(p);
    return p;
}

SystemParams nonrel_state() {
    SystemParams p;
    p.m = 1.0;
    const double kf = 0.1;
    p.mu = std::sqrt(1.0 + kf * kf);
    p.delta = 0.1 * (p.mu - p.m);
    p.lambda_cut = 0.5;
    p.temperature = 0.0;
    p.g = 1.0 / gap_rhs(p);
    return p;
}

SystemParams ultrarel_state() {
    SystemParams p;
    p.m = 1.0;
    p.mu = std::sqrt(1.0 + 100.0 * 100.0);
    p.delta = 1.0;
    p.lambda_cut = 300.0;
    p.temperature = 0.0;
    p.g = 1.0 / gap_rhs(p);
    return p;
}

// ------------------------------------------------------------------------
void criterion_1_gwi() {
    const SystemParams st = reference_state(0.02);
    const ResponseSettings rs;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> ul(-6, 6);
    std::uniform_real_distribution<double> uq(0.05, 0.8);

    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    FourMomentum q_probe{};
    for (int i = 0; i < 20; ++i) {
        int l = ul(rng);
        if (l == 0) l = 1;
        const FourMomentum Q =
            FourMomentum::matsubara_point(l, st.temperature, uq(rng));
        if (i == 0) q_probe = Q;
        const GwiResiduals r =
            gwi_residuals(assemble_response_matrix(st, Q, rs));
        worst = std::max({worst, r.r31, r.r32, r.r33});
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report(1, "GWI residuals on 20 random matsubara points", worst < 1e-6,
           worst, 1e-6);
    report(1, "GWI suite runtime (s)", secs < 120.0, secs, 120.0);

    const double base =
        gwi_residuals(assemble_response_matrix(st, q_probe, rs)).r32;
    SystemParams bad = st;
    bad.g = 1.1 * st.g;
    const double broken =
        gwi_residuals(assemble_response_matrix(bad, q_probe, rs)).r32;
    const double inflation = broken / std::max(base, 1e-300);
    report(1, "Qt22 residual inflation under 10% g shift", inflation >= 1e4,
           inflation, 1e4);
}

// ------------------------------------------------------------------------
void criterion_2_oracle() {
    const SystemParams st = reference_state(0.02);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> up(0.1, 2.5);
    std::uniform_real_distribution<double> uc(-0.95, 0.95);
    std::uniform_real_distribution<double> uq(0.1, 0.8);
    std::uniform_int_distribution<int> ul(-4, 4);

    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const double pm = up(rng), c = uc(rng), q = uq(rng);
        const int l = ul(rng);
        const FourMomentum Q =
            FourMomentum::matsubara_point(l, st.temperature, q);
        const ResponseCell cell = response_cell(st, Q, pm, c, false);
        const double pqm = std::sqrt(pm * pm + q * q + 2.0 * pm * q * c);
        auto gi = [&](double x) {
            const QuasiparticleFrame f = quasiparticle_frame(st, x);
            return (1.0 - 2.0 * fermi(f.e_minus, st.temperature)) / f.e_minus +
                   (1.0 - 2.0 * fermi(f.e_plus, st.temperature)) / f.e_plus;
        };
        const double ct = gi(pm) + gi(pqm);
        const Vec3 pv = {pm * std::sqrt(1.0 - c * c), 0.0, pm * c};
        const Vec3 qv = {0.0, 0.0, q};

        struct Probe {
            int idx, i, j, mu, nu;
        };
        const Probe probes[] = {
            {C11, 1, 1, -1, -1}, {C22, 2, 2, -1, -1}, {C12, 1, 2, -1, -1},
            {C13_0, 1, 3, -1, 0}, {C13_Z, 1, 3, -1, 3}, {C23_0, 2, 3, -1, 0},
            {C23_Z, 2, 3, -1, 3}, {C33_00, 3, 3, 0, 0}, {C33_0Z, 3, 3, 0, 3},
            {C33_ZZ, 3, 3, 3, 3}};
        double fam = 0.0;
        for (const Probe& pr : probes)
            fam = std::max(fam, std::abs(cell.v[pr.idx]));
        for (const Probe& pr : probes) {
            cplx closed = cell.v[pr.idx];
            if (pr.idx == C11 || pr.idx == C22) closed -= ct;
            const OracleResult orc = qij_integrand_oracle(
                st, pv, qv, l, pr.i, pr.j, pr.mu, pr.nu, 4096);
            const double scale = std::max(
                {std::abs(closed), std::abs(orc.value), 1e-6 * fam, 1e-12});
            worst = std::max(worst, std::abs(closed - orc.value) / scale);
        }
    }
    report(2, "closed form vs matsubara oracle, 50 samples x 6 channels",
           worst < 1e-6, worst, 1e-6);
}

// ------------------------------------------------------------------------
void criterion_3_4_sound_speed() {
    {
        const SystemParams st = nonrel_state();
        const SoundSpeedFit fit = fit_sound_speed(st);
        const double ratio = fit.c_s / (fit.k_f / st.m);
        report(3, "nonrelativistic c_s / v_F in [0.565, 0.590]",
               ratio > 0.565 && ratio < 0.590, ratio, 0.5774);
    }
    {
        const SystemParams st = ultrarel_state();
        ResponseSettings rs;
        rs.p_max_factor = 3.0;  // dispersion is Fermi-surface physics
        const SoundSpeedFit fit = fit_sound_speed(st, rs);
        report(4, "ultrarelativistic c_s in [0.565, 0.590]",
               fit.c_s > 0.565 && fit.c_s < 0.590, fit.c_s, 0.5774);
    }
}

// ------------------------------------------------------------------------
void criterion_5_gapless() {
    const SystemParams st = reference_state(0.02);
    const FourMomentum Q = FourMomentum::matsubara_point(0, st.temperature, 0.0);
    const PairChannelValues v = pair_channels(st, Q);
    const cplx qt22p = v.qt22 - v.q12 * (-v.q12) / v.qt11;
    const double resid = std::abs(qt22p) / (2.0 / st.g);
    report(5, "|Qt'22(0,0)| normalized at self-consistency", resid < 1e-6,
           resid, 1e-6);
}

// ------------------------------------------------------------------------
void criterion_6_compressibility() {
    const SystemParams base = reference_state(0.0);
    double worst_routes = 0.0, worst_fd = 0.0;
    for (double mu : {1.05, 1.2875, 1.525, 1.7625, 2.0}) {
        const SystemParams st =
            solve_gap(base.m, mu, base.g, base.lambda_cut, 0.0);
        const CompressibilityReport rep = compressibility(st);
        worst_routes = std::max(worst_routes, rep.rel_diff);
        const double h = 1e-4;
        auto n_of = [&](double m2) {
            return number_density(
                solve_gap(base.m, m2, base.g, base.lambda_cut, 0.0));
        };
        const double fd = (n_of(mu + h) - n_of(mu - h)) / (2.0 * h);
        worst_fd = std::max(worst_fd,
                            std::abs(rep.dn_dmu_eos - fd) / std::abs(fd));
    }
    report(6, "dn/dmu two-route agreement over 5 mu values",
           worst_routes < 1e-4, worst_routes, 1e-4);
    report(6, "dn/dmu EOS vs finite-difference oracle", worst_fd < 1e-4,
           worst_fd, 1e-4);
}

// ------------------------------------------------------------------------
void criterion_7_meissner() {
    SystemParams st = nonrel_state();
    const MeissnerReport r0 = meissner_kernel(st);
    const double rel0 = std::abs(r0.n_s - r0.n_nr) / r0.n_nr;
    report(7, "n_s(T=0) equals n^NR", rel0 < 1e-6, rel0, 1e-6);

    bool decreasing = true;
    double prev = r0.n_s;
    for (double tf : {0.05, 0.2, 0.5}) {
        st.temperature = tf * st.delta;
        const double ns = meissner_kernel(st).n_s;
        decreasing = decreasing && (ns < prev);
        prev = ns;
    }
    report(7, "n_s strictly decreasing over T grid", decreasing,
           decreasing ? 1.0 : 0.0, 1.0);

    // transverse collective contribution at q -> 0, static axis
    st.temperature = 0.0;
    const FourMomentum Q =
        FourMomentum::real_axis(0.0, 0.05 * kf_free(st), 0.0);
    const ResponseMatrix R = assemble_response_matrix(st, Q);
    const KernelTensor K = full_kernel(R);
    const double dk_t = 0.5 * std::abs(K.dk[1][1] + K.dk[2][2]);
    const double k_t = 0.5 * std::abs(K.k[1][1] + K.k[2][2]);
    const double frac = dk_t / std::max(k_t, 1e-300);
    report(7, "transverse collective contribution |dK_T|/|K_T|", frac < 1e-8,
           frac, 1e-8);
}

// ------------------------------------------------------------------------
void criterion_8_symmetries() {
    const SystemParams st = reference_state(0.02);
    ResponseSettings rs;
    rs.quad.rel_tol = 1e-10;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> ul(1, 5);
    std::uniform_real_distribution<double> uq(0.1, 0.7);

    // index symmetry (D11) at the summed-integrand level via the 8x8 oracle
    double worst_d11 = 0.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        const Vec3 p = {gauss(rng), gauss(rng), gauss(rng)};
        const Vec3 q = {0.0, 0.0, uq(rng)};
        const int l = ul(rng);
        const cplx a =
            qij_integrand_oracle(st, p, q, l, 3, 1, 2, -1, 512).value;
        const cplx b =
            qij_integrand_oracle(st, p, q, l, 1, 3, -1, 2, 512).value;
        const cplx c =
            qij_integrand_oracle(st, p, q, l, 2, 1, -1, -1, 512).value;
        const cplx d =
            qij_integrand_oracle(st, p, q, l, 1, 2, -1, -1, 512).value;
        const double s = std::max({std::abs(a), std::abs(c), 1e-8});
        worst_d11 = std::max(worst_d11,
                             std::max(std::abs(a - b), std::abs(c + d)) / s);
    }
    report(8, "index symmetry Q_ji = (-1)^... Q_ij (10 points)",
           worst_d11 < 1e-9, worst_d11, 1e-9);

    // four-momentum parity and the frequency parity table on assembled
    // matrices; bound is 10x the quadrature tolerance against the channel
    // family scale
    const double tol = 10.0 * rs.quad.rel_tol;
    double worst_o1 = 0.0, worst_freq = 0.0;
    for (int t = 0; t < 10; ++t) {
        const int l = ul(rng);
        const double q = uq(rng);
        const ResponseMatrix R = assemble_response_matrix(
            st, FourMomentum::matsubara_point(l, st.temperature, q), rs);
        const ResponseMatrix Rm = assemble_response_matrix(
            st, FourMomentum::matsubara_point(-l, st.temperature, -q), rs);
        const ResponseMatrix Rf = assemble_response_matrix(
            st, FourMomentum::matsubara_point(-l, st.temperature, q), rs);
        double fam = 0.0;
        for (cplx z : {R.qt11, R.qt22, R.q12, R.q13[0], R.q13[3], R.q23[0],
                       R.q23[3], R.q33[0][0], R.q33[0][3], R.q33[3][3],
                       R.q33[1][1]})
            fam = std::max(fam, std::abs(z));
        auto rel = [&](cplx x, cplx y) { return std::abs(x - y) / fam; };
        // O1: everything even under Q -> -Q except the Delta_2 row/column
        worst_o1 = std::max(
            {worst_o1, rel(R.q11, Rm.q11), rel(R.q22, Rm.q22),
             rel(R.q12, -Rm.q12), rel(R.q13[0], Rm.q13[0]),
             rel(R.q13[3], Rm.q13[3]), rel(R.q23[0], -Rm.q23[0]),
             rel(R.q23[3], -Rm.q23[3]), rel(R.q33[0][0], Rm.q33[0][0]),
             rel(R.q33[0][3], Rm.q33[0][3]), rel(R.q33[3][3], Rm.q33[3][3]),
             rel(R.q33[1][1], Rm.q33[1][1])});
        // frequency parity table at fixed q
        worst_freq = std::max(
            {worst_freq, rel(R.q11, Rf.q11), rel(R.q22, Rf.q22),
             rel(R.q12, -Rf.q12), rel(R.q13[0], Rf.q13[0]),
             rel(R.q13[3], -Rf.q13[3]), rel(R.q23[0], -Rf.q23[0]),
             rel(R.q23[3], Rf.q23[3]), rel(R.q33[0][0], Rf.q33[0][0]),
             rel(R.q33[0][3], -Rf.q33[0][3]), rel(R.q33[3][3], Rf.q33[3][3]),
             rel(R.q33[1][1], Rf.q33[1][1])});
    }
    report(8, "four-momentum parity (O1), 10 points", worst_o1 < tol,
           worst_o1, tol);
    report(8, "frequency parity table, 10 points", worst_freq < tol,
           worst_freq, tol);
}

// ------------------------------------------------------------------------
void criterion_9_vertex() {
    const SystemParams st = reference_state(0.02);
    const ResponseSettings rs;
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ul(1, 5);
    std::uniform_real_distribution<double> uq(0.1, 0.7);
    double worst_pi = 0.0, worst_k = 0.0;
    for (int t = 0; t < 5; ++t) {
        const FourMomentum Q =
            FourMomentum::matsubara_point(ul(rng), st.temperature, uq(rng));
        const ResponseMatrix R = assemble_response_matrix(st, Q, rs);
        const InvariantVertex V = invariant_vertex(R);
        worst_pi = std::max({worst_pi, V.residual_pi1, V.residual_pi2});
        const KernelTensor K = full_kernel(R);
        double kscale = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
                kscale = std::max(kscale, std::abs(K.k[mu][nu]));
        worst_k = std::max(worst_k, V.kernel_diff / kscale);
    }
    report(9, "vertex contractions q.Pi1 = 0, q.Pi2 = -2iD", worst_pi < 1e-6,
           worst_pi, 1e-6);
    report(9, "kernel via vertex route vs dK route", worst_k < 1e-8, worst_k,
           1e-8);
}

}  // namespace

int main() {
    std::printf("acceptance suite, state (m=1, mu=1.2, Delta=0.1, Lambda=10, "
                "T=0.02) unless noted\n");
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1_gwi();
    criterion_2_oracle();
    criterion_3_4_sound_speed();
    criterion_5_gapless();
    criterion_6_compressibility();
    criterion_7_meissner();
    criterion_8_symmetries();
    criterion_9_vertex();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s: %d criterion check(s) failed, total %.1f s\n",
                failures == 0 ? "OK" : "FAILED", failures, secs);
    return failures == 0 ? 0 : 1;
}
