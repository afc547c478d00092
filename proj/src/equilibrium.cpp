#include "bcsresp/equilibrium.hpp"

#include <cmath>

namespace bcsresp {

QuasiparticleFrame quasiparticle_frame(const SystemParams& params, double p) {
    QuasiparticleFrame f{};
    f.p = p;
    f.eps = std::sqrt(p * p + params.m * params.m);
    f.xi_minus = f.eps - params.mu;
    f.xi_plus = f.eps + params.mu;
    f.e_minus = std::hypot(f.xi_minus, params.delta);
    f.e_plus = std::hypot(f.xi_plus, params.delta);
    // Delta = 0 limit: u^2 = theta(xi), treat xi = 0 as 1/2
    auto u2 = [](double xi, double e) {
        if (e == 0.0) return 0.5;
        return 0.5 * (1.0 + xi / e);
    };
    f.u2_minus = u2(f.xi_minus, f.e_minus);
    f.v2_minus = 1.0 - f.u2_minus;
    f.u2_plus = u2(f.xi_plus, f.e_plus);
    f.v2_plus = 1.0 - f.u2_plus;
    return f;
}

double fermi(double e, double temperature) {
    if (temperature == 0.0) {
        if (e < 0.0) return 1.0;
        if (e > 0.0) return 0.0;
        return 0.5;
    }
    // evaluate with the decaying exponential on either side
    if (e >= 0.0) {
        const double ex = std::exp(-e / temperature);
        return ex / (1.0 + ex);
    }
    const double ex = std::exp(e / temperature);
    return 1.0 / (1.0 + ex);
}

double fermi_deriv(double e, double temperature) {
    if (temperature == 0.0) return 0.0;
    const double c = std::cosh(0.5 * e / temperature);
    return -0.25 / (temperature * c * c);
}

namespace {

double density_integrand(const SystemParams& params, double p) {
    const QuasiparticleFrame f = quasiparticle_frame(params, p);
    const double T = params.temperature;
    const double plus_branch =
        f.u2_plus * fermi(f.e_plus, T) + f.v2_plus * fermi(-f.e_plus, T);
    const double minus_branch =
        f.u2_minus * fermi(f.e_minus, T) + f.v2_minus * fermi(-f.e_minus, T);
    return p * p * (minus_branch - plus_branch);
}

double density_quad(const SystemParams& params, const QuadOptions& opt) {
    const double kf = kf_free(params);
    std::vector<double> bp;
    if (kf > 0 && kf < params.lambda_cut) bp.push_back(kf);
    const double val =
        integrate_r([&](double p) { return density_integrand(params, p); }, 0.0,
                    params.lambda_cut, bp, opt);
    return 2.0 / (PI * PI) * val;
}

}  // namespace

double number_density(const SystemParams& params) {
    params.validate();
    QuadOptions opt;
    return density_quad(params, opt);
}

QuadratureReport number_density_report(const SystemParams& params) {
    params.validate();
    QuadratureReport r;
    QuadOptions opt;
    r.value = density_quad(params, opt);
    opt.rel_tol *= 0.25;
    opt.abs_tol *= 0.25;
    r.refined_value = density_quad(params, opt);
    const double scale = std::max(std::abs(r.value), 1e-300);
    r.rel_change = std::abs(r.refined_value - r.value) / scale;
    return r;
}

double gap_rhs(const SystemParams& params, double delta_value) {
    SystemParams q = params;
    q.delta = delta_value;
    const double T = q.temperature;
    if (delta_value == 0.0) {
        // integrand has a 1/|xi^-| singularity when the Fermi surface is
        // inside the integration range
        const double kf = kf_free(q);
        if (kf > 0.0 && kf < q.lambda_cut)
            throw SingularIntegrand(
                "gap_rhs: Delta = 0 with mu inside the band gives a log-divergent "
                "integrand at xi^- = 0");
    }
    auto ig = [&](double p) {
        const QuasiparticleFrame f = quasiparticle_frame(q, p);
        const double tm = (1.0 - 2.0 * fermi(f.e_minus, T)) / f.e_minus;
        const double tp = (1.0 - 2.0 * fermi(f.e_plus, T)) / f.e_plus;
        return p * p * (tm + tp);
    };
    const double kf = kf_free(q);
    std::vector<double> bp;
    if (kf > 0 && kf < q.lambda_cut) bp.push_back(kf);
    QuadOptions opt;
    return integrate_r(ig, 0.0, q.lambda_cut, bp, opt) / (2.0 * PI * PI);
}

double gap_rhs(const SystemParams& params) {
    return gap_rhs(params, params.delta);
}

SystemParams solve_gap(double m, double mu, double g, double lambda_cut,
                       double temperature) {
    SystemParams out;
    out.m = m;
    out.mu = mu;
    out.g = g;
    out.lambda_cut = lambda_cut;
    out.temperature = temperature;
    out.delta = 0.0;
    out.validate();
    if (g <= 0.0) throw ConfigError("solve_gap requires g > 0");

    const double target = 1.0 / g;
    const double dmin = 1e-12 * m;
    const double dmax = 10.0 * lambda_cut;
    // RHS is strictly decreasing in Delta; no root when RHS(dmin) < 1/g
    if (gap_rhs(out, dmin) < target) return out;  // normal state
    if (gap_rhs(out, dmax) > target) {
        out.delta = dmax;  // should not happen for sane couplings
        return out;
    }
    double lo = std::log(dmin), hi = std::log(dmax);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gap_rhs(out, std::exp(mid)) > target)
            lo = mid;
        else
            hi = mid;
    }
    out.delta = std::exp(0.5 * (lo + hi));
    return out;
}

FermiSurface fermi_momentum(const SystemParams& params) {
    const double n = number_density(params);
    FermiSurface fs{};
    const double nn = std::max(n, 0.0);
    fs.k_f = std::cbrt(1.5 * PI * PI * nn);
    fs.eps_f = std::sqrt(fs.k_f * fs.k_f + params.m * params.m);
    return fs;
}

}  // namespace bcsresp
