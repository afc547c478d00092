#include "bcsresp/observables.hpp"

#include <cmath>

namespace bcsresp {

DispersionPoint goldstone_point(const SystemParams& params, double q,
                                const ResponseSettings& settings) {
    params.validate();
    if (params.delta <= 0.0)
        throw ConfigError("goldstone_point requires a paired state");
    // continuum edge: min_p (E-(p+q) + E-(p)) = 2 Delta for q <= 2 k_F.
    // Qt'22 log-diverges at the edge itself, so a crossing confined to the
    // last 2% is the continuum remnant, not a collective mode.
    const double edge = 2.0 * params.delta;
    auto F = [&](double w) { return qtilde22_prime(params, w, q, settings); };
    double lo = 0.0, hi = 0.98 * edge;
    double flo = F(lo), fhi = F(hi);
    if (!(flo > 0.0) || !(fhi < 0.0))
        throw NoRootBelowContinuum(
            "Qt'22 has no sign change below the pair-breaking continuum");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = F(mid);
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    DispersionPoint pt{};
    pt.q = q;
    pt.omega = 0.5 * (lo + hi);
    pt.residual = std::abs(F(pt.omega));
    return pt;
}

std::vector<DispersionPoint> goldstone_dispersion(
    const SystemParams& params, const std::vector<double>& q_list,
    const ResponseSettings& settings) {
    std::vector<DispersionPoint> out;
    out.reserve(q_list.size());
    for (double q : q_list) out.push_back(goldstone_point(params, q, settings));
    return out;
}

SoundSpeedFit fit_sound_speed(const SystemParams& params,
                              const ResponseSettings& settings) {
    SoundSpeedFit fit{};
    const FermiSurface fs = fermi_momentum(params);
    fit.k_f = fs.k_f;
    fit.eps_f = fs.eps_f;
    fit.v_f = fs.k_f / fs.eps_f;
    // leading-order window: q <= 0.05 Delta / c_s-estimate
    const double c_est = fit.v_f / std::sqrt(3.0);
    const double q_cap = 0.05 * params.delta / c_est;
    const std::vector<double> qs = {q_cap / 3.0, 2.0 * q_cap / 3.0, q_cap};
    fit.points = goldstone_dispersion(params, qs, settings);
    double num = 0.0, den = 0.0;
    for (const DispersionPoint& p : fit.points) {
        num += p.omega * p.q;
        den += p.q * p.q;
    }
    fit.c_s = num / den;
    return fit;
}

namespace {

struct StaticSums {
    double s3, sx, sxx;  // 1/E^3 sums, xi/E^3 difference, xi^2/E^3 sum
};

StaticSums static_sums(const SystemParams& params) {
    const double kf = kf_free(params);
    std::vector<double> bp;
    if (kf > 0 && kf < params.lambda_cut) bp.push_back(kf);
    QuadOptions opt;
    auto sum = [&](auto f) {
        return integrate_r(
                   [&](double p) {
                       const QuasiparticleFrame fr = quasiparticle_frame(params, p);
                       return p * p * f(fr);
                   },
                   0.0, params.lambda_cut, bp, opt) /
               (2.0 * PI * PI);
    };
    StaticSums s{};
    s.s3 = sum([](const QuasiparticleFrame& f) {
        return 1.0 / std::pow(f.e_minus, 3) + 1.0 / std::pow(f.e_plus, 3);
    });
    s.sx = sum([](const QuasiparticleFrame& f) {
        return f.xi_minus / std::pow(f.e_minus, 3) -
               f.xi_plus / std::pow(f.e_plus, 3);
    });
    s.sxx = sum([](const QuasiparticleFrame& f) {
        return f.xi_minus * f.xi_minus / std::pow(f.e_minus, 3) +
               f.xi_plus * f.xi_plus / std::pow(f.e_plus, 3);
    });
    return s;
}

}  // namespace

StaticLimits static_limits(const SystemParams& params) {
    params.validate();
    const StaticSums s = static_sums(params);
    StaticLimits out{};
    out.s3 = s.s3;
    out.sx = s.sx;
    out.q11 = -2.0 * s.sxx;
    out.qt11 = (params.g > 0 ? 2.0 / params.g : 0.0) + out.q11;
    out.q00_33 = -2.0 * params.delta * params.delta * s.s3;
    out.q0_13 = -2.0 * params.delta * s.sx;
    return out;
}

double compressibility_eos(const SystemParams& params) {
    if (params.temperature != 0.0)
        throw ConfigError("compressibility closed form is T = 0 only");
    if (params.delta <= 0.0)
        throw ConfigError("compressibility closed form needs Delta > 0");
    const StaticSums s = static_sums(params);
    return 2.0 * params.delta * params.delta * s.s3 + 2.0 * s.sx * s.sx / s.s3;
}

double compressibility_response(const SystemParams& params) {
    if (params.temperature != 0.0)
        throw ConfigError("compressibility response route is T = 0 only");
    const StaticLimits L = static_limits(params);
    // -K^00(0, q->0) = -[Q00_33 - Q0_13 Q0_31 / Qt11]; Q0_31 = Q0_13 and the
    // tilde uses the stored coupling, so self-consistency of g enters
    const double k00 = L.q00_33 - L.q0_13 * L.q0_13 / L.qt11;
    return -k00;
}

CompressibilityReport compressibility(const SystemParams& params) {
    CompressibilityReport r{};
    r.dn_dmu_eos = compressibility_eos(params);
    r.dn_dmu_response = compressibility_response(params);
    const double n = number_density(params);
    r.kappa = r.dn_dmu_eos / (n * n);
    r.rel_diff = std::abs(r.dn_dmu_response - r.dn_dmu_eos) /
                 std::abs(r.dn_dmu_eos);
    return r;
}

MeissnerReport meissner_kernel(const SystemParams& params) {
    params.validate();
    const double T = params.temperature;
    const double m = params.m;
    const double kf = kf_free(params);
    std::vector<double> bp;
    if (kf > 0 && kf < params.lambda_cut) bp.push_back(kf);
    QuadOptions opt;

    auto radial = [&](auto f, const SystemParams& st) {
        return integrate_r(
            [&](double p) {
                const QuasiparticleFrame fr = quasiparticle_frame(st, p);
                return f(p, fr);
            },
            0.0, st.lambda_cut, bp, opt);
    };

    MeissnerReport rep{};
    // n^NR = (1/pi^2) int p^2 [u-^2 f(E-) + v-^2 f(-E-)]
    rep.n_nr = radial(
                   [&](double p, const QuasiparticleFrame& f) {
                       return p * p *
                              (f.u2_minus * fermi(f.e_minus, T) +
                               f.v2_minus * fermi(-f.e_minus, T));
                   },
                   params) /
               (PI * PI);
    // thermal depletion (1/(3 pi^2 m)) int p^4 (-df/dE-)
    const double depl = radial(
                            [&](double p, const QuasiparticleFrame& f) {
                                return p * p * p * p *
                                       (-fermi_deriv(f.e_minus, T));
                            },
                            params) /
                        (3.0 * PI * PI * m);
    rep.n_s = rep.n_nr - depl;
    rep.n_total = number_density(params);

    // longitudinal-structure (Landau) kernel 4 int p^hat p^hat (f'- + f'+),
    // reduced with <p^hat_z^2> = p^2/(3 eps^2)
    rep.k_l = radial(
                  [&](double p, const QuasiparticleFrame& f) {
                      const double w = p * p * (p * p) / (3.0 * f.eps * f.eps);
                      return 4.0 * w *
                             (fermi_deriv(f.e_minus, T) + fermi_deriv(f.e_plus, T));
                  },
                  params) /
              (2.0 * PI * PI);

    // transverse kernel: pair + scattering mixed-branch structure, vacuum
    // subtracted at T = Delta = 0, mu = m with the same cutoff
    auto transverse = [&](const SystemParams& st) {
        const double Tl = st.temperature;
        return radial(
                   [&](double p, const QuasiparticleFrame& f) {
                       const double X =
                           (f.xi_plus * f.xi_minus - st.delta * st.delta) /
                           (f.e_plus * f.e_minus);
                       const double fm = fermi(f.e_minus, Tl);
                       const double fp = fermi(f.e_plus, Tl);
                       const double pair =
                           (1.0 + X) * (fm + fp - 1.0) / (f.e_minus + f.e_plus);
                       double scat;
                       const double de = f.e_minus - f.e_plus;
                       if (std::abs(de) < 1e-9 * st.m)
                           // mu -> 0 limit: (f- - f+)/(E- - E+) -> f'(E)
                           scat = (1.0 - X) *
                                  fermi_deriv(0.5 * (f.e_minus + f.e_plus), Tl);
                       else
                           scat = (1.0 - X) * (fm - fp) / de;
                       const double w =
                           p * p * (1.0 - p * p / (3.0 * f.eps * f.eps));
                       return 4.0 * w * (pair + scat);
                   },
                   st) /
               (2.0 * PI * PI);
    };
    SystemParams vac = params;
    vac.mu = m;
    vac.delta = 0.0;
    vac.temperature = 0.0;
    rep.k_t = transverse(params) - transverse(vac);
    rep.nonrelativistic_ok = (kf / m) < 0.3;
    return rep;
}

Vec3 london_current(const SystemParams& params, const Vec3& a_transverse) {
    const MeissnerReport rep = meissner_kernel(params);
    const double coef = -2.0 * rep.n_s / params.m;
    return {coef * a_transverse[0], coef * a_transverse[1],
            coef * a_transverse[2]};
}

}  // namespace bcsresp
