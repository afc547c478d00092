// bcsresp: batch front-end for the gauge-invariant linear response of
// relativistic BCS superfluids.
//
// usage: bcsresp <subcommand> [--config FILE] [--key value ...]
// subcommands: solve response gwi collective kappa meissner selftest
//
// exit codes: 0 ok, 1 config error, 2 numerical non-convergence,
//             3 selftest failure

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bcsresp/dirac_nambu.hpp"
#include "bcsresp/gauge.hpp"
#include "bcsresp/observables.hpp"

using namespace bcsresp;

namespace {

struct Config {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string str(const std::string& k, const std::string& dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
    double num(const std::string& k, double dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(k);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("bad numeric value for key '" + k + "': " +
                              it->second);
        }
    }
    long integer(const std::string& k, long dflt) const {
        return static_cast<long>(num(k, static_cast<double>(dflt)));
    }
    std::vector<double> list(const std::string& k,
                             const std::vector<double>& dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) out.push_back(std::stod(tok));
        if (out.empty()) throw ConfigError("empty list for key '" + k + "'");
        return out;
    }
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// flat key = value file with optional [subcommand] sections
void load_config_file(const std::string& path, const std::string& section,
                      Config& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line, scope;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            scope = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line is not key = value: " + line);
        if (!scope.empty() && scope != section) continue;
        cfg.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
}

SystemParams resolve_state(const Config& cfg) {
    SystemParams st;
    st.m = cfg.num("m", 1.0);
    st.lambda_cut = cfg.num("lambda", 10.0);
    st.temperature = cfg.num("temperature", 0.0);
    const int given = cfg.has("mu") + cfg.has("delta") + cfg.has("g");
    if (given != 2)
        throw ConfigError(
            "exactly two of {mu, delta, g} must be supplied; got " +
            std::to_string(given));
    if (cfg.has("mu") && cfg.has("delta")) {
        st.mu = cfg.num("mu", 0.0);
        st.delta = cfg.num("delta", 0.0);
        st.validate();
        st.g = st.delta > 0 ? 1.0 / gap_rhs(st) : 0.0;
    } else if (cfg.has("mu") && cfg.has("g")) {
        st = solve_gap(st.m, cfg.num("mu", 0.0), cfg.num("g", 0.0),
                       st.lambda_cut, st.temperature);
    } else {
        // delta + g: invert the gap equation for mu (RHS increases with mu)
        st.delta = cfg.num("delta", 0.0);
        st.g = cfg.num("g", 0.0);
        if (st.g <= 0 || st.delta <= 0)
            throw ConfigError("delta+g mode needs positive delta and g");
        const double target = 1.0 / st.g;
        double lo = 0.0,
               hi = std::sqrt(st.lambda_cut * st.lambda_cut + st.m * st.m);
        auto rhs_at = [&](double mu) {
            SystemParams s = st;
            s.mu = mu;
            return gap_rhs(s);
        };
        if (rhs_at(lo) > target || rhs_at(hi) < target)
            throw ConfigError("no chemical potential solves the gap equation "
                              "for the given (delta, g)");
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (rhs_at(mid) < target ? lo : hi) = mid;
        }
        st.mu = 0.5 * (lo + hi);
    }
    return st;
}

ResponseSettings resolve_settings(const Config& cfg) {
    ResponseSettings rs;
    rs.quad.rel_tol = cfg.num("quad_rel_tol", 1e-10);
    rs.p_max_factor = cfg.num("pmax_factor", 50.0);
    return rs;
}

int thread_budget(std::size_t njobs) {
    unsigned cap = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BCSRESP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) cap = static_cast<unsigned>(v);
    }
    if (cap < 1) cap = 1;
    return static_cast<int>(std::min<std::size_t>(cap, njobs));
}

// deterministic parallel map: results land by index regardless of scheduling
template <typename F>
auto parallel_map(std::size_t n, F fn) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(n);
    const int nthreads = thread_budget(n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                out[i] = fn(i);
            }
        }));
    for (auto& f : pool) f.get();
    return out;
}

struct Output {
    std::filesystem::path dir;
    std::string format;  // csv | json
    std::vector<std::pair<std::string, std::string>> resolved;

    void add(const std::string& k, double v) {
        std::ostringstream ss;
        ss.precision(16);
        ss << v;
        resolved.emplace_back(k, ss.str());
    }
    void add(const std::string& k, const std::string& v) {
        resolved.emplace_back(k, v);
    }

    std::ofstream open(const std::string& name,
                       const std::string& header_cols) {
        std::filesystem::create_directories(dir);
        std::ofstream f(dir / (name + (format == "json" ? ".json" : ".csv")));
        f.precision(16);
        if (format == "json") {
            f << "{\n  \"config\": {";
            for (std::size_t i = 0; i < resolved.size(); ++i)
                f << (i ? ", " : "") << '"' << resolved[i].first << "\": \""
                  << resolved[i].second << '"';
            f << "},\n  \"columns\": [" << header_cols << "],\n  \"rows\": [\n";
        } else {
            for (const auto& [k, v] : resolved)
                f << "# " << k << " = " << v << "\n";
            f << header_cols << "\n";
        }
        return f;
    }
};

std::string cols_joined(const std::vector<std::string>& names, bool json) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += json ? ", " : ",";
        out += json ? ('"' + names[i] + '"') : names[i];
    }
    return out;
}

void emit_row(std::ofstream& f, const std::string& format,
              const std::vector<double>& vals, bool last) {
    std::ostringstream ss;
    ss.precision(16);
    for (std::size_t i = 0; i < vals.size(); ++i)
        ss << (i ? "," : "") << vals[i];
    if (format == "json")
        f << "    [" << ss.str() << "]" << (last ? "\n" : ",\n");
    else
        f << ss.str() << "\n";
}

void close_output(std::ofstream& f, const std::string& format) {
    if (format == "json") f << "  ]\n}\n";
}

void describe_state(Output& out, const SystemParams& st) {
    out.add("m", st.m);
    out.add("mu", st.mu);
    out.add("delta", st.delta);
    out.add("g", st.g);
    out.add("lambda", st.lambda_cut);
    out.add("temperature", st.temperature);
}

// ---------------------------------------------------------------- solve ----
int cmd_solve(const Config& cfg, Output out) {
    const SystemParams st = resolve_state(cfg);
    const double n = number_density(st);
    const FermiSurface fs = fermi_momentum(st);
    describe_state(out, st);
    auto f = out.open("solve",
                      cols_joined({"n", "k_f", "eps_f", "gap_residual",
                                   "quad_rel_change"},
                                  out.format == "json"));
    const double resid =
        st.delta > 0 && st.g > 0 ? std::abs(st.g * gap_rhs(st) - 1.0) : 0.0;
    const QuadratureReport rep = number_density_report(st);
    emit_row(f, out.format, {n, fs.k_f, fs.eps_f, resid, rep.rel_change},
             true);
    close_output(f, out.format);
    std::cout << "n = " << n << ", k_F = " << fs.k_f << ", eps_F = " << fs.eps_f
              << ", delta = " << st.delta << ", g = " << st.g << "\n";
    return 0;
}

// ------------------------------------------------------------- response ----
int cmd_response(const Config& cfg, Output out) {
    const SystemParams st = resolve_state(cfg);
    const ResponseSettings rs = resolve_settings(cfg);
    const std::vector<double> qs = cfg.list("q_list", {0.2, 0.4});
    const std::vector<double> ls = cfg.list("l_list", {0, 1, 2});
    describe_state(out, st);
    out.add("q_list", cfg.str("q_list", "0.2,0.4"));
    out.add("l_list", cfg.str("l_list", "0,1,2"));
    out.add("pmax_factor", rs.p_max_factor);

    std::vector<std::string> cols = {"l", "omega_im", "q"};
    for (const char* n :
         {"q11", "q12", "q22", "q13_0", "q13_z", "q23_0", "q23_z", "q33_00",
          "q33_0z", "q33_zz", "q33_xx", "qt11", "qt22"}) {
        cols.push_back(std::string(n) + "_re");
        cols.push_back(std::string(n) + "_im");
    }
    auto f = out.open("response", cols_joined(cols, out.format == "json"));

    struct Job {
        int l;
        double q;
    };
    std::vector<Job> jobs;
    for (double ld : ls)
        for (double q : qs) jobs.push_back({static_cast<int>(ld), q});
    auto rows = parallel_map(jobs.size(), [&](std::size_t i) {
        const FourMomentum Q = FourMomentum::matsubara_point(
            jobs[i].l, st.temperature, jobs[i].q);
        const ResponseMatrix R = assemble_response_matrix(st, Q, rs);
        std::vector<double> row = {static_cast<double>(jobs[i].l),
                                   Q.omega.imag(), jobs[i].q};
        auto push = [&row](cplx z) {
            row.push_back(z.real());
            row.push_back(z.imag());
        };
        push(R.q11);
        push(R.q12);
        push(R.q22);
        push(R.q13[0]);
        push(R.q13[3]);
        push(R.q23[0]);
        push(R.q23[3]);
        push(R.q33[0][0]);
        push(R.q33[0][3]);
        push(R.q33[3][3]);
        push(R.q33[1][1]);
        push(R.qt11);
        push(R.qt22);
        return row;
    });
    for (std::size_t i = 0; i < rows.size(); ++i)
        emit_row(f, out.format, rows[i], i + 1 == rows.size());
    close_output(f, out.format);
    std::cout << "response grid written (" << rows.size() << " points)\n";
    return 0;
}

// ------------------------------------------------------------------ gwi ----
int cmd_gwi(const Config& cfg, Output out) {
    const SystemParams st = resolve_state(cfg);
    const ResponseSettings rs = resolve_settings(cfg);
    const int npoints = static_cast<int>(cfg.integer("points", 20));
    const unsigned seed = static_cast<unsigned>(cfg.integer("seed", 1));
    const double qmin = cfg.num("q_min", 0.05), qmax = cfg.num("q_max", 0.8);
    describe_state(out, st);
    out.add("points", static_cast<double>(npoints));
    out.add("seed", static_cast<double>(seed));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> ul(-6, 6);
    std::uniform_real_distribution<double> uq(qmin, qmax);
    struct Pt {
        int l;
        double q;
    };
    std::vector<Pt> pts;
    for (int i = 0; i < npoints; ++i) {
        int l = ul(rng);
        if (l == 0) l = 1;  // the identities are empty at q_mu = 0
        pts.push_back({l, uq(rng)});
    }
    auto rows = parallel_map(pts.size(), [&](std::size_t i) {
        const FourMomentum Q =
            FourMomentum::matsubara_point(pts[i].l, st.temperature, pts[i].q);
        const ResponseMatrix R = assemble_response_matrix(st, Q, rs);
        const GwiResiduals r = gwi_residuals(R);
        return std::vector<double>{static_cast<double>(pts[i].l), pts[i].q,
                                   r.r31, r.r32, r.r33};
    });
    auto f = out.open(
        "gwi", cols_joined({"l", "q", "r31", "r32", "r33"},
                           out.format == "json"));
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        worst = std::max({worst, rows[i][2], rows[i][3], rows[i][4]});
        emit_row(f, out.format, rows[i], i + 1 == rows.size());
    }
    close_output(f, out.format);
    std::cout << "max normalized GWI residual over " << npoints
              << " points: " << worst << "\n";
    return 0;
}

// ------------------------------------------------------------ collective ----
int cmd_collective(const Config& cfg, Output out) {
    const SystemParams st = resolve_state(cfg);
    const ResponseSettings rs = resolve_settings(cfg);
    describe_state(out, st);
    out.add("pmax_factor", rs.p_max_factor);

    SoundSpeedFit fit{};
    if (cfg.has("q_list")) {
        const std::vector<double> qs = cfg.list("q_list", {});
        fit.points = goldstone_dispersion(st, qs, rs);
        const FermiSurface fs = fermi_momentum(st);
        fit.k_f = fs.k_f;
        fit.eps_f = fs.eps_f;
        fit.v_f = fs.k_f / fs.eps_f;
        double num = 0, den = 0;
        for (const auto& p : fit.points) {
            num += p.omega * p.q;
            den += p.q * p.q;
        }
        fit.c_s = num / den;
    } else {
        fit = fit_sound_speed(st, rs);
    }
    out.add("k_f", fit.k_f);
    out.add("v_f", fit.v_f);
    out.add("c_s", fit.c_s);
    out.add("c_s_over_v_f", fit.c_s / fit.v_f);
    auto f = out.open("collective",
                      cols_joined({"q", "omega", "residual"},
                                  out.format == "json"));
    for (std::size_t i = 0; i < fit.points.size(); ++i)
        emit_row(f, out.format,
                 {fit.points[i].q, fit.points[i].omega, fit.points[i].residual},
                 i + 1 == fit.points.size());
    close_output(f, out.format);
    std::cout << "c_s = " << fit.c_s << " (c_s/v_F = " << fit.c_s / fit.v_f
              << ", v_F = " << fit.v_f << ")\n";
    return 0;
}

// ---------------------------------------------------------------- kappa ----
int cmd_kappa(const Config& cfg, Output out) {
    const SystemParams base = resolve_state(cfg);
    if (base.temperature != 0.0)
        throw ConfigError("kappa subcommand runs at T = 0");
    const std::vector<double> mus = cfg.list("mu_sweep", {base.mu});
    describe_state(out, base);
    auto rows = parallel_map(mus.size(), [&](std::size_t i) {
        const SystemParams st =
            solve_gap(base.m, mus[i], base.g, base.lambda_cut, 0.0);
        const CompressibilityReport rep = compressibility(st);
        return std::vector<double>{mus[i],         st.delta,
                                   rep.dn_dmu_eos, rep.dn_dmu_response,
                                   rep.kappa,      rep.rel_diff};
    });
    auto f = out.open("kappa",
                      cols_joined({"mu", "delta", "dn_dmu_eos",
                                   "dn_dmu_response", "kappa", "rel_diff"},
                                  out.format == "json"));
    for (std::size_t i = 0; i < rows.size(); ++i)
        emit_row(f, out.format, rows[i], i + 1 == rows.size());
    close_output(f, out.format);
    std::cout << "compressibility sweep written (" << rows.size()
              << " chemical potentials)\n";
    return 0;
}

// -------------------------------------------------------------- meissner ----
int cmd_meissner(const Config& cfg, Output out) {
    const SystemParams base = resolve_state(cfg);
    const std::vector<double> tfracs =
        cfg.list("t_over_delta_list", {0.0, 0.05, 0.2, 0.5});
    describe_state(out, base);
    auto rows = parallel_map(tfracs.size(), [&](std::size_t i) {
        SystemParams st = base;
        st.temperature = tfracs[i] * base.delta;
        const MeissnerReport rep = meissner_kernel(st);
        return std::vector<double>{st.temperature, rep.k_l,  rep.k_t,
                                   rep.n_s,        rep.n_nr, rep.n_total,
                                   rep.nonrelativistic_ok ? 1.0 : 0.0};
    });
    auto f = out.open("meissner",
                      cols_joined({"temperature", "k_l", "k_t", "n_s", "n_nr",
                                   "n_total", "nonrel_ok"},
                                  out.format == "json"));
    for (std::size_t i = 0; i < rows.size(); ++i)
        emit_row(f, out.format, rows[i], i + 1 == rows.size());
    close_output(f, out.format);
    std::cout << "meissner table written (" << rows.size()
              << " temperatures)\n";
    return 0;
}

// -------------------------------------------------------------- selftest ----
int cmd_selftest(const Config& cfg, Output out) {
    const unsigned seed = static_cast<unsigned>(cfg.integer("seed", 1));
    const int nsamp = static_cast<int>(cfg.integer("samples", 25));
    SystemParams st;
    st.m = cfg.num("m", 1.0);
    st.mu = cfg.num("mu", 1.2);
    st.delta = cfg.num("delta", 0.1);
    st.lambda_cut = cfg.num("lambda", 10.0);
    st.temperature = cfg.num("temperature", 0.02);
    st.g = 1.0 / gap_rhs(st);
    describe_state(out, st);
    out.add("seed", static_cast<double>(seed));
    out.add("samples", static_cast<double>(nsamp));

    bool ok = true;
    std::vector<std::vector<double>> rows;
    auto record = [&](const char* name, double worst, double tol) {
        const bool pass = worst < tol;
        ok = ok && pass;
        std::cout << (pass ? "pass  " : "FAIL  ") << name
                  << "  max residual = " << worst << "  (tol " << tol << ")\n";
        rows.push_back({static_cast<double>(rows.size()), worst, tol,
                        pass ? 1.0 : 0.0});
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uq(0.1, 0.8);
    std::uniform_int_distribution<int> ul(-4, 4);

    record("dirac algebra identities", algebra().identity_residual(), 1e-14);

    {  // closed-form coherence coefficients vs 8x8 traces (current channel)
        double worst = 0.0;
        for (int t = 0; t < nsamp; ++t) {
            const Vec3 p = {gauss(rng), gauss(rng), gauss(rng)};
            const Vec3 q = {0.6 * gauss(rng), 0.6 * gauss(rng),
                            0.6 * gauss(rng)};
            const AlgebraConstants& A = algebra();
            const UvOperators up = uv_operators(st, add3(p, q));
            const UvOperators ua = uv_operators(st, p);
            const Matrix8* bp[4] = {&up.u_minus, &up.v_minus, &up.u_plus,
                                    &up.v_plus};
            const Matrix8* ap[4] = {&ua.u_minus, &ua.v_minus, &ua.u_plus,
                                    &ua.v_plus};
            const CoherencePairSet set = coherence_set(st, p, q, 3, 3);
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a)
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = 0; nu < 4; ++nu) {
                            const cplx tr =
                                (A.vertex3[mu] * (*bp[b]) * A.g0_hat *
                                 A.vertex3[nu] * (*ap[a]) * A.g0_hat)
                                    .trace();
                            worst = std::max(
                                worst, std::abs(set.tensor[b][a][mu][nu] - tr));
                        }
        }
        record("coherence coefficients vs trace oracle", worst, 1e-10);
    }

    {  // closed-form integrand vs truncated matsubara sum
        double worst = 0.0;
        std::uniform_real_distribution<double> up(0.1, 2.5);
        std::uniform_real_distribution<double> uc(-0.95, 0.95);
        for (int t = 0; t < nsamp; ++t) {
            const double pm = up(rng), c = uc(rng), q = uq(rng);
            const int l = ul(rng);
            const FourMomentum Q =
                FourMomentum::matsubara_point(l, st.temperature, q);
            const ResponseCell cell = response_cell(st, Q, pm, c, false);
            const Vec3 pv = {pm * std::sqrt(1.0 - c * c), 0.0, pm * c};
            const Vec3 qv = {0.0, 0.0, q};
            const OracleResult orc =
                qij_integrand_oracle(st, pv, qv, l, 3, 3, 3, 3, 4096);
            const double scale = std::max(
                {std::abs(cell.v[C33_ZZ]), std::abs(orc.value), 1e-6});
            worst = std::max(worst,
                             std::abs(cell.v[C33_ZZ] - orc.value) / scale);
        }
        record("response integrand vs matsubara oracle", worst, 1e-6);
    }

    {  // Ward identities on a short random grid
        const ResponseSettings rs;
        double worst = 0.0;
        for (int t = 0; t < 6; ++t) {
            int l = ul(rng);
            if (l == 0) l = 2;
            const FourMomentum Q =
                FourMomentum::matsubara_point(l, st.temperature, uq(rng));
            const GwiResiduals r =
                gwi_residuals(assemble_response_matrix(st, Q, rs));
            worst = std::max({worst, r.r31, r.r32, r.r33});
        }
        record("generalized Ward identities", worst, 1e-6);
    }

    {  // compressibility two-route agreement at T = 0
        SystemParams t0 = st;
        t0.temperature = 0.0;
        const CompressibilityReport rep = compressibility(t0);
        record("compressibility route agreement", rep.rel_diff, 1e-4);
    }

    auto f = out.open("selftest",
                      cols_joined({"suite", "max_residual", "tolerance",
                                   "pass"},
                                  out.format == "json"));
    for (std::size_t i = 0; i < rows.size(); ++i)
        emit_row(f, out.format, rows[i], i + 1 == rows.size());
    close_output(f, out.format);
    return ok ? 0 : 3;
}

void usage() {
    std::cerr
        << "usage: bcsresp <subcommand> [--config FILE] [--key value ...]\n"
           "subcommands: solve response gwi collective kappa meissner "
           "selftest\n"
           "state keys: m, lambda, temperature and exactly two of {mu, "
           "delta, g}\n"
           "common keys: out (dir), format (csv|json), seed, quad_rel_tol, "
           "pmax_factor\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage();
        return 1;
    }
    const std::string sub = argv[1];
    try {
        Config cfg;
        std::string config_file;
        std::vector<std::pair<std::string, std::string>> overrides;
        for (int i = 2; i < argc; ++i) {
            std::string key = argv[i];
            if (key.rfind("--", 0) != 0)
                throw ConfigError("expected --key value, got: " + key);
            key = key.substr(2);
            if (i + 1 >= argc) throw ConfigError("missing value for --" + key);
            overrides.emplace_back(key, argv[++i]);
            if (key == "config") config_file = argv[i];
        }
        if (!config_file.empty()) load_config_file(config_file, sub, cfg);
        for (const auto& [k, v] : overrides)
            if (k != "config") cfg.kv[k] = v;

        Output out;
        out.dir = cfg.str("out", "./out");
        out.format = cfg.str("format", "csv");
        if (out.format != "csv" && out.format != "json")
            throw ConfigError("format must be csv or json");
        out.add("subcommand", sub);

        if (sub == "solve") return cmd_solve(cfg, std::move(out));
        if (sub == "response") return cmd_response(cfg, std::move(out));
        if (sub == "gwi") return cmd_gwi(cfg, std::move(out));
        if (sub == "collective") return cmd_collective(cfg, std::move(out));
        if (sub == "kappa") return cmd_kappa(cfg, std::move(out));
        if (sub == "meissner") return cmd_meissner(cfg, std::move(out));
        if (sub == "selftest") return cmd_selftest(cfg, std::move(out));
        usage();
        throw ConfigError("unknown subcommand: " + sub);
    } catch (const ConfigError& e) {
        std::cerr << "{\"error\": \"config\", \"what\": \"" << e.what()
                  << "\"}\n";
        return 1;
    } catch (const NumericsError& e) {
        std::cerr << "{\"error\": \"numerics\", \"what\": \"" << e.what()
                  << "\"}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"internal\", \"what\": \"" << e.what()
                  << "\"}\n";
        return 2;
    }
}
