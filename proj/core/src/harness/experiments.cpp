#include "ulnse/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ulnse/divfree.hpp"
#include "ulnse/harness/csv.hpp"
#include "ulnse/harness/generators.hpp"
#include "ulnse/harness/report.hpp"
#include "ulnse/littlewood.hpp"
#include "ulnse/norms.hpp"
#include "ulnse/operators.hpp"
#include "ulnse/pressure.hpp"
#include "ulnse/snapshot.hpp"
#include "ulnse/solver.hpp"
#include "ulnse/weights.hpp"

namespace ulnse::harness {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

class Emitter {
public:
    Emitter(fs::path dir, RunManifest& m) : dir_(std::move(dir)), m_(m) {}

    void csv(const std::string& name, const CsvTable& t) {
        write_csv(dir_ / name, t);
        record(name);
    }
    void text(const std::string& name, const std::string& body) {
        write_text(dir_ / name, body);
        record(name);
    }
    void snapshot(const std::string& name, const ScalarField& f) {
        save_snapshot(dir_ / name, f);
        record(name);
    }
    const fs::path& dir() const { return dir_; }

private:
    void record(const std::string& name) {
        const std::string sum = sha256_file(dir_ / name);
        for (Artifact& a : m_.artifacts) {
            if (a.path == name) {
                a.sha256 = sum;
                return;
            }
        }
        m_.artifacts.push_back({name, sum});
    }

    fs::path dir_;
    RunManifest& m_;
};

std::string tag(std::uint64_t seed) { return "s" + std::to_string(seed); }

CsvTable trajectory_table(const Trajectory& tr) {
    CsvTable t;
    t.header = {"t", "omega_inf", "u_ulR", "Z", "energy", "enstrophy", "div_res", "mean_u1", "mean_u2", "substeps"};
    for (const DiagnosticRow& r : tr.rows) {
        t.add({r.t, r.omega_inf, r.u_ulR, r.Z, r.energy, r.enstrophy, r.div_res, r.mean_u1, r.mean_u2,
               static_cast<double>(r.substeps)});
    }
    return t;
}

// Runs the solver, persisting the partial trajectory if a step fails.
Trajectory run_persisting(const Solver& solver, SolverState s, Emitter& out, const std::string& label,
                          const Solver::Observer& obs = {}) {
    try {
        return solver.run(std::move(s), obs);
    } catch (const RunError& e) {
        out.csv("partial_" + label + ".csv", trajectory_table(e.partial()));
        throw;
    }
}

double rot_inf(const std::optional<VectorField>& g) { return g ? curl(*g).max_abs() : 0.0; }

ScalarField frobenius_gradient(const VectorField& u) {
    const VectorField a = gradient(u.x);
    const VectorField b = gradient(u.y);
    ScalarField m(u.grid());
    auto mv = m.values();
    for (std::size_t k = 0; k < mv.size(); ++k) {
        mv[k] = std::sqrt(a.x.values()[k] * a.x.values()[k] + a.y.values()[k] * a.y.values()[k] +
                          b.x.values()[k] * b.x.values()[k] + b.y.values()[k] * b.y.values()[k]);
    }
    return m;
}

// ---------------------------------------------------------------- max_principle

void run_max_principle(const ExperimentConfig& cfg, Emitter& out) {
    const Grid g = cfg.grid();
    const double tol = 10.0 * cfg.dt * cfg.dt + 10.0 * g.spacing() * g.spacing();
    std::vector<std::string> variants{"none"};
    if (cfg.forcing != "none") variants.push_back(cfg.forcing);
    for (std::uint64_t seed : cfg.seeds) {
        const VectorField u0 = initial_velocity(cfg.initial, g, seed, cfg.initial_amplitude);
        for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
            const double alpha = cfg.alphas[ai];
            for (const std::string& fname : variants) {
                auto forcing = forcing_field(fname, g, seed, cfg.forcing_amplitude, cfg.forcing_wavenumber);
                const double rg = rot_inf(forcing);
                SolverConfig sc = cfg.solver_config(std::move(forcing), alpha);
                sc.diag_local = false;
                const Solver solver(sc);
                const std::string label = tag(seed) + "_a" + std::to_string(ai) + (fname == "none" ? "_g0" : "_g1");
                const Trajectory tr = run_persisting(solver, init_state(u0), out, label);
                const double w0 = tr.rows.front().omega_inf;
                CsvTable t;
                t.header = {"t", "alpha", "omega_inf", "envelope", "envelope_sharp", "excess", "tol", "energy", "div_res"};
                for (const DiagnosticRow& r : tr.rows) {
                    const double e = std::exp(-alpha * r.t);
                    const double env = alpha > 0.0 ? w0 * e + rg / alpha : w0 + r.t * rg;
                    const double sharp = alpha > 0.0 ? w0 * e + (1.0 - e) / alpha * rg : w0 + r.t * rg;
                    t.add({r.t, alpha, r.omega_inf, env, sharp, r.omega_inf - env, tol, r.energy, r.div_res});
                }
                out.csv("trajectory_" + label + ".csv", t);
            }
        }
    }
}

// ------------------------------------------------------------------ dissipative

void run_dissipative(const ExperimentConfig& cfg, Emitter& out) {
    const Grid g = cfg.grid();
    const double gamma = cfg.gamma > 0.0 ? cfg.gamma : 0.25 * cfg.alpha;
    const double r_max = 0.5 * g.length() - g.spacing();
    for (std::uint64_t seed : cfg.seeds) {
        const VectorField u0 = initial_velocity(cfg.initial, g, seed, cfg.initial_amplitude);
        auto forcing = forcing_field(cfg.forcing, g, seed, cfg.forcing_amplitude, cfg.forcing_wavenumber);
        const double g_b = forcing ? ul_norm(*forcing, 2.0, 1.0) : 0.0;
        const double G = g_b + rot_inf(forcing);
        const double u0_b = ul_norm(u0, 2.0, 1.0);
        const double A0 = u0_b + curl(u0).max_abs();
        const Solver solver(cfg.solver_config(std::move(forcing), cfg.alpha));
        CsvTable t;
        t.header = {"t", "u_ulR", "Z", "omega_inf", "energy", "R_t", "R_eff", "corrected", "corrected_ratio"};
        ScalarField last(g);
        auto obs = [&](const SolverState& s, const DiagnosticRow& r) {
            // Radius schedule with all constants set to one.
            const double base = A0 * std::exp(-gamma * r.t) + G;
            const double R_t = base * base;
            const double R_eff = std::clamp(R_t, 1.0, r_max);
            const double corrected = ul_norm(s.velocity(), 2.0, R_eff) / R_eff;
            const double shape = u0_b * std::exp(-gamma * r.t) + g_b;
            t.add({r.t, r.u_ulR, r.Z, r.omega_inf, r.energy, R_t, R_eff, corrected, corrected / shape});
            last = s.omega();
        };
        try {
            run_persisting(solver, init_state(u0), out, tag(seed), obs);
        } catch (...) {
            out.csv("dissipative_" + tag(seed) + ".csv", t);
            throw;
        }
        out.csv("dissipative_" + tag(seed) + ".csv", t);
        out.snapshot("omega_final_" + tag(seed) + ".bin", last);
    }
}

// ----------------------------------------------------------------------- growth

void run_growth(const ExperimentConfig& cfg, Emitter& out) {
    const Grid g = cfg.grid();
    const double r_cap = 0.5 * g.length() - g.spacing();
    auto mean_value = [&](const VectorField& u, double t, double& rho, bool& capped) {
        const double want = std::pow(t + 1.0, 4);
        capped = want > r_cap;
        rho = capped ? r_cap : want;
        return ul_norm(u, 2.0, rho) / rho;
    };

    for (std::uint64_t seed : cfg.seeds) {
        const VectorField u0 = initial_velocity(cfg.initial, g, seed, cfg.initial_amplitude);
        auto forcing = forcing_field(cfg.forcing, g, seed, cfg.forcing_amplitude, cfg.forcing_wavenumber);
        const double rg = rot_inf(forcing);
        const Solver solver(cfg.solver_config(std::move(forcing), 0.0));
        const double w0 = curl(u0).max_abs();
        CsvTable t;
        t.header = {"t",          "u_ulR", "ratio5",     "omega_inf",         "omega_bound", "rho",
                    "capped",     "mean_value", "mean_value_per_t1", "energy", "mean_u1",     "mean_u2"};
        ScalarField last(g);
        auto obs = [&](const SolverState& s, const DiagnosticRow& r) {
            double rho = 0.0;
            bool capped = false;
            const double m = mean_value(s.velocity(), r.t, rho, capped);
            t.add({r.t, r.u_ulR, r.u_ulR / std::pow(r.t + 1.0, 5), r.omega_inf, w0 + r.t * rg, rho,
                   capped ? 1.0 : 0.0, m, m / (r.t + 1.0), r.energy, r.mean_u1, r.mean_u2});
            last = s.omega();
        };
        try {
            run_persisting(solver, init_state(u0), out, tag(seed), obs);
        } catch (...) {
            out.csv("growth_" + tag(seed) + ".csv", t);
            throw;
        }
        out.csv("growth_" + tag(seed) + ".csv", t);
        out.snapshot("omega_final_" + tag(seed) + ".bin", last);
    }

    // Constant forcing: from rest the solution is exactly u = t g; from the
    // configured data the mean-value quantity is compared with the same slope.
    const double amp = cfg.forcing_amplitude > 0.0 ? cfg.forcing_amplitude : 1.0;
    const VectorField gconst = *forcing_field("constant", g, 0, amp, 1);
    const double slope = std::sqrt(pi) * amp;
    for (const bool from_rest : {true, false}) {
        const VectorField u0 = from_rest ? VectorField(g) : initial_velocity(cfg.initial, g, cfg.seeds.front(), cfg.initial_amplitude);
        SolverConfig sc = cfg.solver_config(gconst, 0.0);
        sc.diag_local = false;
        const Solver solver(sc);
        CsvTable t;
        t.header = {"t", "mean_u1", "mean_u2", "exact_u1", "mean_err", "rho", "capped", "mean_value", "linear_ref",
                    "linear_ratio"};
        double m0 = 0.0;
        auto obs = [&](const SolverState& s, const DiagnosticRow& r) {
            double rho = 0.0;
            bool capped = false;
            const double m = mean_value(s.velocity(), r.t, rho, capped);
            if (t.rows.empty()) m0 = m;
            const double exact = u0.mean().x + r.t * amp;
            const double ref = m0 + slope * r.t;
            const double err = std::hypot(r.mean_u1 - exact, r.mean_u2 - u0.mean().y);
            t.add({r.t, r.mean_u1, r.mean_u2, exact, err, rho, capped ? 1.0 : 0.0, m, ref,
                   ref > 0.0 ? m / ref : std::numeric_limits<double>::quiet_NaN()});
        };
        const std::string name = from_rest ? "baseline_rest.csv" : "baseline_data.csv";
        try {
            run_persisting(solver, init_state(u0), out, from_rest ? "baseline_rest" : "baseline_data", obs);
        } catch (...) {
            out.csv(name, t);
            throw;
        }
        out.csv(name, t);
    }
}

// ------------------------------------------------------------------- uniqueness

std::string short_double(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

void run_uniqueness(const ExperimentConfig& cfg, Emitter& out) {
    const Grid g = cfg.grid();
    const double q = 0.25 * g.length();
    const std::vector<Vec2> centers{{0.0, 0.0}, {q, 0.0}, {0.0, q}, {-q, -q}};
    auto weighted = [&](const VectorField& v, Vec2 x0) {
        return weighted_norm(v, WeightFamily::theta_scaled(cfg.diag_R, x0), 2.0);
    };
    for (std::uint64_t seed : cfg.seeds) {
        const VectorField u0 = initial_velocity(cfg.initial, g, seed, cfg.initial_amplitude);
        const VectorField dv = initial_velocity("random_bump", g, seed + 7919, cfg.initial_amplitude);
        auto forcing = forcing_field(cfg.forcing, g, seed, cfg.forcing_amplitude, cfg.forcing_wavenumber);
        SolverConfig sc = cfg.solver_config(std::move(forcing), cfg.alpha);
        sc.diag_local = false;
        const Solver solver(sc);

        std::vector<SolverState> states{init_state(u0)};
        std::vector<std::vector<double>> initial_norms;
        for (double d : cfg.deltas) {
            const VectorField u1 = u0 + d * dv;
            states.push_back(init_state(u1));
            std::vector<double> norms;
            for (Vec2 c : centers) norms.push_back(weighted(d * dv, c));
            initial_norms.push_back(norms);
        }
        CsvTable t;
        t.header = {"t"};
        for (double d : cfg.deltas) t.header.push_back("amp_" + short_double(d));
        auto record = [&] {
            const VectorField base = states[0].velocity();
            std::vector<double> row{states[0].t};
            for (std::size_t k = 0; k < cfg.deltas.size(); ++k) {
                const VectorField diff = states[k + 1].velocity() - base;
                double amp = 0.0;
                for (std::size_t c = 0; c < centers.size(); ++c) {
                    amp = std::max(amp, weighted(diff, centers[c]) / initial_norms[k][c]);
                }
                row.push_back(amp);
            }
            t.add(row);
        };
        record();
        const long total = sc.total_steps();
        try {
            for (long step = 1; step <= total; ++step) {
                int m = 1;
                for (const SolverState& s : states) m = std::max(m, solver.cfl_substeps(s));
                for (SolverState& s : states) solver.advance(s, m);
                if (step % cfg.diag_every == 0 || step == total) record();
            }
        } catch (...) {
            out.csv("uniqueness_" + tag(seed) + ".csv", t);
            throw;
        }
        out.csv("uniqueness_" + tag(seed) + ".csv", t);
    }
}

// -------------------------------------------------------------------- smoothing

void run_smoothing(const ExperimentConfig& cfg, Emitter& out) {
    const Grid g = cfg.grid();
    for (std::uint64_t seed : cfg.seeds) {
        const VectorField u0 = initial_velocity(cfg.initial, g, seed, cfg.initial_amplitude);
        auto forcing = forcing_field(cfg.forcing, g, seed, cfg.forcing_amplitude, cfg.forcing_wavenumber);
        SolverConfig sc = cfg.solver_config(std::move(forcing), cfg.alpha);
        sc.diag_local = false;
        const Solver solver(sc);
        CsvTable t;
        t.header = {"t", "u_ulR", "grad_ulR", "scaled_grad", "omega_inf", "energy"};
        ScalarField last(g);
        auto obs = [&](const SolverState& s, const DiagnosticRow& r) {
            const VectorField u = s.velocity();
            const double gu = ul_norm(frobenius_gradient(u), 2.0, cfg.diag_R);
            t.add({r.t, ul_norm(u, 2.0, cfg.diag_R), gu, std::sqrt(r.t) * gu, r.omega_inf, r.energy});
            last = s.omega();
        };
        try {
            run_persisting(solver, init_state(u0), out, tag(seed), obs);
        } catch (...) {
            out.csv("smoothing_" + tag(seed) + ".csv", t);
            throw;
        }
        out.csv("smoothing_" + tag(seed) + ".csv", t);
        out.snapshot("omega_final_" + tag(seed) + ".bin", last);
    }
}

// ----------------------------------------------------------------------- lemmas

void run_lemmas(const ExperimentConfig& cfg, Emitter& out) {
    const Grid g = cfg.grid();
    const double L = g.length();
    std::string body = "seed," + estimate_csv_header() + "\n";
    auto add = [&](std::uint64_t seed, const EstimateReport& r) { body += std::to_string(seed) + "," + r.csv_row() + "\n"; };
    const Grid quad(1024, 256.0);
    const Grid unit_box(256, 2.0 * pi);
    const DyadicSpec unit_spec = DyadicSpec::for_grid(unit_box);

    try {
        for (std::uint64_t seed : cfg.seeds) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> unit(0.0, 1.0);

            // Weight convolution lemma.
            for (int k = 0; k < 10; ++k) {
                const double R = 1.0 + 3.0 * unit(rng);
                const Vec2 x0{32.0 * unit(rng) - 16.0, 32.0 * unit(rng) - 16.0};
                const Vec2 y0{32.0 * unit(rng) - 16.0, 32.0 * unit(rng) - 16.0};
                add(seed, theta_convolution_check(R, x0, y0, quad));
            }

            const VectorField u = initial_velocity(cfg.initial, g, seed, cfg.initial_amplitude);
            const TensorField w = TensorField::outer(u);

            // Pressure pairing bound, sweep over scales and centers.
            for (double R : cfg.R_values) {
                for (int c = 0; c < cfg.centers; ++c) {
                    const Vec2 x0{L * (unit(rng) - 0.5), L * (unit(rng) - 0.5)};
                    add(seed, lemma02_bound(w, u, R, x0, cfg.p, cfg.q));
                }
            }

            // Interpolation inequalities on compactly supported truncations.
            for (double R : cfg.R_values) {
                const Truncation tr = truncate_divfree(u, R);
                add(seed, interpolation_check(tr.field, R, {}, InterpolationVariant::L3));
                add(seed, interpolation_check(tr.field, R, {}, InterpolationVariant::Linf, 4.0));
                EstimateReport amp = EstimateReport::make("truncation_amplification", ul_norm(tr.field, 2.0, 1.0),
                                                          ul_norm(u, 2.0, 1.0));
                amp.params["N"] = R;
                add(seed, amp);
                EstimateReport res = EstimateReport::make("truncation_residual", tr.divergence_residual, 1e-8);
                res.params["N"] = R;
                add(seed, res);
            }

            // Bernstein on a rough band-unlimited scalar.
            const ScalarField rough = curl(initial_velocity("rough_highfreq", unit_box, seed, 1.0));
            for (int j = 2; j <= 6; ++j) {
                const auto [first, second] = bernstein_check(rough, j, 2.0, kInfinity, unit_spec);
                add(seed, first);
                add(seed, second);
            }

            // Stream function: path integral against the spectral inverse.
            const ScalarField a = stream_function(u);
            const ScalarField b = stream_function_spectral(u);
            double diff = 0.0;
            for (std::size_t k = 0; k < a.values().size(); ++k) {
                diff = std::max(diff, std::abs(a.values()[k] - b.values()[k]));
            }
            add(seed, EstimateReport::make("stream_roundtrip", diff / std::max(1e-300, b.max_abs()), 1e-3));
        }
    } catch (...) {
        out.text("estimates.csv", body);
        throw;
    }
    out.text("estimates.csv", body);
}

}  // namespace

fs::path output_dir(const ExperimentConfig& cfg, const RunOptions& opts) {
    return opts.out ? *opts.out : fs::path(cfg.output);
}

RunManifest run_experiment(const ExperimentConfig& base, const RunOptions& opts) {
    ExperimentConfig cfg = base;
    if (opts.seed) cfg.seeds = {*opts.seed};
    if (opts.out) cfg.output = opts.out->string();
    const fs::path dir = output_dir(cfg, opts);

    RunManifest m;
    m.experiment = cfg.experiment;
    m.code_version = code_version();
    m.started = utc_timestamp();
    m.config = cfg.echo();
    m.status = "ok";
    fs::create_directories(dir);
    Emitter out(dir, m);
    try {
        validate_static(cfg);
        if (cfg.experiment == "max_principle") {
            run_max_principle(cfg, out);
        } else if (cfg.experiment == "dissipative") {
            run_dissipative(cfg, out);
        } else if (cfg.experiment == "growth") {
            run_growth(cfg, out);
        } else if (cfg.experiment == "uniqueness") {
            run_uniqueness(cfg, out);
        } else if (cfg.experiment == "smoothing") {
            run_smoothing(cfg, out);
        } else {
            run_lemmas(cfg, out);
        }
        const std::vector<SummaryRow> rows = summarize_run(m, dir);
        std::string body = "claim,metric,value,threshold,direction,pass\n";
        for (const SummaryRow& r : rows) {
            body += r.claim + "," + r.metric + "," + format_double(r.value) + "," + format_double(r.threshold) + "," +
                    (r.info ? "info" : (r.upper ? "max" : "min")) + "," + (r.pass() ? "PASS" : "FAIL") + "\n";
        }
        out.text("summary.csv", body);
    } catch (const std::exception& e) {
        m.status = "failed";
        m.error = e.what();
    }
    m.finished = utc_timestamp();
    write_manifest(dir / "manifest.json", m);
    return m;
}

}  // namespace ulnse::harness
