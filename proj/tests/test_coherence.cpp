#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bcsresp/coherence.hpp"
#include "bcsresp/dirac_nambu.hpp"

using namespace bcsresp;

namespace {

Vec3 rand_vec(std::mt19937_64& rng, double s) {
    std::normal_distribution<double> d(0.0, s);
    return {d(rng), d(rng), d(rng)};
}

// Tr[S_i X_b(p+q) g0 S_j Y_a(p) g0] straight from the 8x8 algebra
cplx trace_entry(const SystemParams& st, const Vec3& p, const Vec3& q, int b,
                 int a, int i, int j, int mu_idx, int nu_idx) {
    const AlgebraConstants& A = algebra();
    const Vec3 pq = add3(p, q);
    const UvOperators up = uv_operators(st, pq);
    const UvOperators ua = uv_operators(st, p);
    const Matrix8* opsp[4] = {&up.u_minus, &up.v_minus, &up.u_plus, &up.v_plus};
    const Matrix8* opsa[4] = {&ua.u_minus, &ua.v_minus, &ua.u_plus, &ua.v_plus};
    auto vertex = [&](int k, int idx) -> const Matrix8& {
        if (k == 1) return A.vertex1;
        if (k == 2) return A.vertex2;
        return A.vertex3[idx];
    };
    return (vertex(i, mu_idx) * (*opsp[b]) * A.g0_hat * vertex(j, nu_idx) *
            (*opsa[a]) * A.g0_hat)
        .trace();
}

}  // namespace

TEST_CASE("kinematic factors") {
    std::mt19937_64 rng(17);
    const double m = 1.0;
    // q = 0 limits
    const Vec3 p0 = {0.3, -0.7, 0.4};
    const KinematicFactors k0 = kinematic_factors(p0, {0, 0, 0}, m);
    CHECK(k0.a_norm == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(k0.b_norm == doctest::Approx(2.0).epsilon(1e-15));
    for (int t = 0; t < 20; ++t) {
        const Vec3 p = rand_vec(rng, 1.0);
        const Vec3 q = rand_vec(rng, 0.8);
        const KinematicFactors k = kinematic_factors(p, q, m);
        // A + B = 2 eps' eps by construction
        CHECK(k.a_norm + k.b_norm == doctest::Approx(2.0).epsilon(1e-13));
        // parity (p, q) -> (-p, -q)
        const Vec3 mp = {-p[0], -p[1], -p[2]};
        const Vec3 mq = {-q[0], -q[1], -q[2]};
        const KinematicFactors km = kinematic_factors(mp, mq, m);
        CHECK(k.a_norm == doctest::Approx(km.a_norm).epsilon(1e-13));
        CHECK(k.b_norm == doctest::Approx(km.b_norm).epsilon(1e-13));
    }
}

TEST_CASE("coherence coefficients match the 8x8 trace oracle") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> umu(-1.6, 1.9);
    std::uniform_real_distribution<double> ud(0.05, 1.3);
    for (int t = 0; t < 100; ++t) {
        SystemParams st;
        st.m = 1.0;
        st.mu = umu(rng);
        st.delta = ud(rng);
        st.lambda_cut = 10.0;
        const Vec3 p = rand_vec(rng, 1.2);
        const Vec3 q = rand_vec(rng, 0.7);

        for (auto [i, j] : {std::pair{1, 1}, {2, 2}, {1, 2}}) {
            const CoherencePairSet set = coherence_set(st, p, q, i, j);
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a) {
                    const cplx tr = trace_entry(st, p, q, b, a, i, j, -1, -1);
                    CHECK(std::abs(set.scalar[b][a] - tr) < 1e-10);
                }
        }
        for (int i : {1, 2}) {
            const CoherencePairSet set = coherence_set(st, p, q, i, 3);
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a)
                    for (int nu = 0; nu < 4; ++nu) {
                        const cplx tr = trace_entry(st, p, q, b, a, i, 3, -1, nu);
                        CHECK(std::abs(set.vector4[b][a][nu] - tr) < 1e-10);
                    }
        }
        {
            const CoherencePairSet set = coherence_set(st, p, q, 3, 3);
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a)
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = 0; nu < 4; ++nu) {
                            const cplx tr =
                                trace_entry(st, p, q, b, a, 3, 3, mu, nu);
                            CHECK(std::abs(set.tensor[b][a][mu][nu] - tr) < 1e-10);
                        }
        }
    }
}

TEST_CASE("channel (1,1) on the Fermi surface at q = 0") {
    SystemParams st;
    st.m = 1.0;
    st.mu = 1.2;
    st.delta = 0.1;
    st.lambda_cut = 10.0;
    const double pf = std::sqrt(0.44);
    const CoherencePairSet set =
        coherence_set(st, {0.0, 0.0, pf}, {0.0, 0.0, 0.0}, 1, 1);
    const QuasiparticleFrame f = quasiparticle_frame(st, pf);
    const double expect =
        2.0 * st.delta * st.delta / (f.e_minus * f.e_minus);
    CHECK(set.scalar[UMinus][UMinus].real() == doctest::Approx(expect));
    CHECK(set.scalar[UMinus][UMinus].imag() == doctest::Approx(0.0));
}

TEST_CASE("channel (1,2) entries are purely imaginary") {
    SystemParams st;
    st.m = 1.0;
    st.mu = 0.9;
    st.delta = 0.25;
    st.lambda_cut = 10.0;
    const CoherencePairSet set =
        coherence_set(st, {0.4, 0.1, -0.6}, {0.1, -0.2, 0.3}, 1, 2);
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a)
            CHECK(std::abs(set.scalar[b][a].real()) < 1e-14);
    // antisymmetric pairing: (u-v-)_12 = -(v-u-)_12
    CHECK(std::abs(set.scalar[UMinus][VMinus] + set.scalar[VMinus][UMinus]) <
          1e-14);
}
