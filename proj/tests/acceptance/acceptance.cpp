// Acceptance suite: one PASS/FAIL line per criterion. Criteria can be
// selected by number on the command line; the default runs all of them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "support.hpp"
#include "ulnse/divfree.hpp"
#include "ulnse/harness/config.hpp"
#include "ulnse/harness/csv.hpp"
#include "ulnse/harness/experiments.hpp"
#include "ulnse/harness/generators.hpp"
#include "ulnse/harness/report.hpp"
#include "ulnse/littlewood.hpp"
#include "ulnse/norms.hpp"
#include "ulnse/parallel.hpp"
#include "ulnse/pressure.hpp"
#include "ulnse/solver.hpp"
#include "ulnse/weights.hpp"

using namespace ulnse;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Detail {
public:
    template <class T>
    Detail& operator<<(const T& v) {
        out_ << v;
        return *this;
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolverConfig plain_config(const Grid& g, double alpha, double dt, double t_end) {
    SolverConfig cfg;
    cfg.grid = g;
    cfg.alpha = alpha;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.diag_local = false;
    return cfg;
}

SolverState final_state(const Solver& solver, SolverState s) {
    SolverState last(s.grid());
    solver.run(std::move(s), [&](const SolverState& st, const DiagnosticRow&) { last = st; });
    return last;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ulnse_acceptance" / name;
    fs::remove_all(dir);
    return dir;
}

// Runs a harness experiment and returns its summary rows by claim.
std::vector<harness::SummaryRow> run_harness(const std::string& text, const std::string& name) {
    const harness::ExperimentConfig cfg = harness::parse_config_string(text, name);
    harness::RunOptions opts;
    opts.out = scratch_dir(name);
    const harness::RunManifest m = harness::run_experiment(cfg, opts);
    if (m.status != "ok") throw std::runtime_error(name + " run failed: " + m.error);
    return harness::summarize(*opts.out / "manifest.json");
}

double radial_integral(double (*f)(double)) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([f](double r) { return 2.0 * pi * r * f(r); });
}

double rel_l2_inner(const VectorField& a, const VectorField& b, int offset) {
    const int n = a.x.grid().n();
    double num = 0.0, den = 0.0;
    for (int i = n / 4; i < 3 * n / 4; ++i) {
        for (int j = n / 4; j < 3 * n / 4; ++j) {
            const double bx = b.x(i + offset, j + offset), by = b.y(i + offset, j + offset);
            num += std::pow(a.x(i, j) - bx, 2) + std::pow(a.y(i, j) - by, 2);
            den += bx * bx + by * by;
        }
    }
    return std::sqrt(num / den);
}

// ---------------------------------------------------------------------------

Outcome taylor_green_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid g(128, 2.0 * pi);
    double worst = 0.0;
    for (double alpha : {0.0, 1.0}) {
        const SolverState s0 = init_state(taylor_green(g));
        const SolverState s1 = final_state(Solver(plain_config(g, alpha, 1e-3, 1.0)), s0);
        ScalarField expected = s0.omega();
        expected *= std::exp(-(2.0 + alpha) * s1.t);
        worst = std::max(worst, max_diff(s1.omega(), expected) / s0.omega().max_abs());
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-5 && secs < 30.0,
            (Detail() << "max rel error " << sci(worst) << " (<= 1e-5), " << sci(secs) << " s (< 30)").str()};
}

Outcome linear_growth_baseline() {
    const Grid g(64, 8.0 * pi);
    const Vec2 c{0.7, -0.2};
    SolverConfig cfg = plain_config(g, 0.0, 0.01, 5.0);
    cfg.forcing = VectorField::constant(g, c);
    cfg.diag_every = 5;
    const Trajectory traj = Solver(cfg).run(init_state(VectorField{ScalarField(g), ScalarField(g)}));
    double worst = 0.0;
    for (const DiagnosticRow& r : traj.rows) {
        worst = std::max({worst, std::abs(r.mean_u1 - r.t * c.x), std::abs(r.mean_u2 - r.t * c.y)});
    }
    return {worst <= 1e-12 && traj.rows.size() == 101,
            (Detail() << traj.rows.size() << " rows, max |mean u - t g| " << sci(worst) << " (<= 1e-12)").str()};
}

Outcome maximum_principle() {
    const auto rows = run_harness(R"(
experiment = "max_principle"
n = 128
L = 16*pi
dt = 0.01
t_end = 5
diag_every = 10
initial = "random_band"
forcing = "random_smooth"
forcing_amplitude = 0.2
alphas = [0.5, 1]
seeds = [1, 2, 3, 4, 5]
R_values = [4]
)",
                                  "max_principle");
    bool pass = true;
    Detail d;
    d << "5 seeds x alpha {0.5, 1}:";
    for (const auto& r : rows) {
        if (r.info) continue;
        pass = pass && r.pass();
        d << " " << r.claim << " " << r.value;
    }
    return {pass && rows.size() >= 2, d.str()};
}

TensorField random_tensor(const Grid& g, std::uint64_t seed) {
    TensorField w(g);
    w.xx = random_smooth(g, 3 * seed, 4, false);
    w.xy = random_smooth(g, 3 * seed + 1, 4, false);
    w.yy = random_smooth(g, 3 * seed + 2, 4, false);
    return w;
}

Outcome pressure_identities() {
    const Grid g(64, 2.0 * pi);
    double div_err = 0.0, rot_err = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const TensorField w = random_tensor(g, seed);
        const VectorField q = grad_p_spectral(w);
        ScalarField source = partial_x(partial_x(w.xx));
        source += 2.0 * partial_x(partial_y(w.xy));
        source += partial_y(partial_y(w.yy));
        div_err = std::max(div_err, max_diff(divergence(q), source));
        rot_err = std::max(rot_err, curl(q).max_abs());
    }
    const VectorField tg = grad_p_spectral(TensorField::outer(taylor_green(g)));
    const VectorField expected =
        VectorField::from_function(g, [](Vec2 x) { return Vec2{0.5 * std::sin(2.0 * x.x), 0.5 * std::sin(2.0 * x.y)}; });
    const double tg_err = max_diff(tg, expected);
    return {div_err <= 1e-10 && rot_err <= 1e-10 && tg_err <= 1e-10,
            (Detail() << "div " << sci(div_err) << ", rot " << sci(rot_err) << ", Taylor-Green " << sci(tg_err)
                      << " (each <= 1e-10)")
                .str()};
}

Outcome kernel_split() {
    const auto bump_u = [](Vec2 x) {
        const Vec2 z = x - Vec2{0.5, -0.3};
        const double a = 6.0;
        const double s = z.norm2() / (a * a);
        if (s >= 1.0) return Vec2{};
        const double b = std::exp(1.0 - 1.0 / (1.0 - s));
        const double f = -2.0 * b / (a * a * (1.0 - s) * (1.0 - s));
        return Vec2{f * z.y, -f * z.x};
    };
    const int n = 256;
    const double L = 48.0;
    const Grid g(n, L);
    const Grid big(2 * n, 2.0 * L);
    const TensorField w = TensorField::outer(VectorField::from_function(g, bump_u));
    const VectorField oracle = grad_p_spectral(TensorField::outer(VectorField::from_function(big, bump_u)));
    double worst = 0.0;
    Detail d;
    d << "rel L2 on inner half box:";
    for (double R : {4.0, 8.0, 16.0}) {
        const double e = rel_l2_inner(grad_p_kernel_split(w, SplitSpec{R}), oracle, n / 2);
        worst = std::max(worst, e);
        d << " R=" << R << " " << sci(e);
    }
    d << " (<= 1e-3)";
    return {worst <= 1e-3, d.str()};
}

Outcome lemma02_uniformity() {
    const auto rows = run_harness(R"(
experiment = "lemmas"
n = 256
L = 32*pi
initial = "sinusoidal_nondecaying"
seeds = [1, 2, 3, 4, 5]
R_values = [4, 8, 16]
centers = 20
p = 1.5
q = 3
)",
                                  "lemmas");
    Detail d;
    bool found = false, pass = false;
    for (const auto& r : rows) {
        if (r.claim.starts_with("lemma02 at R")) d << r.claim.substr(11) << ": " << sci(r.value) << ", ";
        if (r.claim == "lemma02 uniform in R") {
            found = true;
            pass = r.pass();
            d << "spread " << sci(r.value) << " (< 3)";
        }
    }
    return {found && pass, d.str()};
}

Outcome weight_lemma() {
    const Grid quad(1024, 256.0);
    const double oracle = radial_integral([](double r) { return 1.0 / std::pow(1.0 + r * r * r, 2); });
    const EstimateReport center = theta_convolution_check(1.0, {}, {}, quad);
    const double center_err = std::abs(center.lhs / oracle - 1.0);

    // The ratio is invariant under x -> R x; far apart it tends to twice the
    // integral of theta, which bounds it.
    const double bound = 2.0 * radial_integral([](double r) { return 1.0 / (1.0 + r * r * r); });
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> pos(-20.0, 20.0);
    std::uniform_real_distribution<double> radius(1.0, 4.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double R = radius(rng);
        const Vec2 x0{pos(rng), pos(rng)};
        const Vec2 y0{pos(rng), pos(rng)};
        worst = std::max(worst, theta_convolution_check(R, x0, y0, quad).ratio);
    }
    return {center_err <= 0.02 && worst <= 1.02 * bound,
            (Detail() << "center " << center.lhs << " vs " << oracle << " (rel " << sci(center_err)
                      << ", <= 2%), max ratio over 50 triples " << worst << " (<= " << 1.02 * bound << ")")
                .str()};
}

VectorField sinusoidal(const Grid& g, double a, double b) {
    return VectorField::from_function(g, [=](Vec2 x) {
        return Vec2{b * std::sin(a * x.x) * std::cos(b * x.y), -a * std::cos(a * x.x) * std::sin(b * x.y)};
    });
}

Outcome truncation() {
    const double a = 2.0 * pi * 2.0 / 32.0;
    const double b = 2.0 * pi * 3.0 / 32.0;
    double div = 0.0, inside = 0.0, outside = 0.0;
    std::vector<double> amp;
    for (double N : {8.0, 16.0, 32.0}) {
        const Grid g(512, 4.0 * N);
        const VectorField u = sinusoidal(g, a, b);
        const Truncation t = truncate_divfree(u, N);
        div = std::max(div, t.spectral_divergence);
        for (int i = 0; i < g.n(); ++i) {
            for (int j = 0; j < g.n(); ++j) {
                const double r = g.point(i, j).norm();
                const double dx = std::abs(t.field.x(i, j) - u.x(i, j));
                const double dy = std::abs(t.field.y(i, j) - u.y(i, j));
                if (r <= N) inside = std::max({inside, dx, dy});
                if (r > 2.0 * N) outside = std::max({outside, std::abs(t.field.x(i, j)), std::abs(t.field.y(i, j))});
            }
        }
        amp.push_back(ul_norm(t.field, 2.0, 1.0) / ul_norm(u, 2.0, 1.0));
    }
    const auto [lo, hi] = std::minmax_element(amp.begin(), amp.end());
    const bool stable = std::all_of(amp.begin(), amp.end(), [&](double v) { return std::abs(v / amp[1] - 1.0) <= 0.2; });
    return {div <= 1e-8 && inside <= 1e-10 && outside == 0.0 && stable,
            (Detail() << "div " << sci(div) << " (<= 1e-8), on B^N " << sci(inside) << " (<= 1e-10), outside B^2N "
                      << outside << ", amplification " << *lo << ".." << *hi << " (+-20%)")
                .str()};
}

ScalarField band_limited(const Grid& g, std::uint64_t seed, double kmax) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    Spectrum s(g);
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c)
            if (std::sqrt(s.wave(r, c).k_sq) <= kmax && c < g.n() / 2 && r != g.n() / 2) s.at(r, c) = {d(rng), d(rng)};
    return inverse(s);
}

// perp grad [b(x/R) sin(2 x1/R) sin(2 x2/R)] with b the bump of radius 2.
VectorField windowed_taylor_green(const Grid& g, double R) {
    return VectorField::from_function(g, [R](Vec2 x) {
        const Vec2 y{x.x / R, x.y / R};
        const double s = y.norm2() / 4.0;
        if (s >= 1.0) return Vec2{};
        const double bb = std::exp(1.0 - 1.0 / (1.0 - s));
        const double db = -2.0 * bb / (4.0 * (1.0 - s) * (1.0 - s));
        const double S = std::sin(2.0 * y.x) * std::sin(2.0 * y.y);
        const double S1 = 2.0 * std::cos(2.0 * y.x) * std::sin(2.0 * y.y);
        const double S2 = 2.0 * std::sin(2.0 * y.x) * std::cos(2.0 * y.y);
        return Vec2{db * y.y * S + bb * S2, -(db * y.x * S + bb * S1)};
    });
}

Outcome littlewood_paley() {
    double partition = 0.0;
    for (const Grid& g : {Grid(64, 2.0 * pi), Grid(256, 2.0 * pi), Grid(256, 64.0 * pi)}) {
        partition = std::max(partition, partition_residual(g, DyadicSpec::for_grid(g)));
    }

    const Grid g(128, 2.0 * pi);
    const DyadicSpec spec = DyadicSpec::for_grid(g);
    double recon = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ScalarField f = band_limited(g, seed, std::ldexp(1.0, spec.j_max));
        ScalarField sum = low_pass(f, spec.j_min);
        for (int j = spec.j_min; j <= spec.j_max; ++j) sum += dyadic_block(f, j, spec);
        recon = std::max(recon, max_diff(sum, f) / std::max(1.0, f.max_abs()));
    }

    // On the annulus |xi| >= 2^(j-1) the derivative ratio is at most 2. The
    // low-pass output is a trigonometric polynomial on the modes |k| < 2^j, so
    // sup <= sum |c_k| <= sqrt(#modes / L^2) L2 by Cauchy-Schwarz and Parseval.
    const Grid gb(256, 2.0 * pi);
    const DyadicSpec sb = DyadicSpec::for_grid(gb);
    double derivative = 0.0, exponent = 0.0, exponent_bound = 0.0;
    for (int j = 2; j <= 6; ++j) {
        const double radius = std::ldexp(1.0, j) / gb.fundamental();
        long modes = 0;
        for (int a = -gb.n() / 2; a < gb.n() / 2; ++a)
            for (int b = -gb.n() / 2; b < gb.n() / 2; ++b)
                if (a * a + b * b < radius * radius) ++modes;
        exponent_bound = std::max(exponent_bound, std::sqrt(static_cast<double>(modes)) / (gb.length() * std::ldexp(1.0, j)));
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ScalarField f = random_field(gb, seed);
        for (int j = 2; j <= 6; ++j) {
            const auto [d1, d2] = bernstein_check(f, j, 2.0, kInfinity, sb);
            derivative = std::max(derivative, d1.ratio);
            exponent = std::max(exponent, d2.ratio);
        }
    }
    const double derivative_bound = 2.0;

    const Grid gi(512, 80.0);
    double spread = 0.0, homogeneity = 0.0;
    for (InterpolationVariant variant : {InterpolationVariant::L3, InterpolationVariant::Linf}) {
        std::vector<double> ratios;
        for (double R : {4.0, 8.0, 16.0}) {
            const VectorField u = windowed_taylor_green(gi, R);
            const EstimateReport r = interpolation_check(u, R, {}, variant, 4.0);
            VectorField scaled = u;
            scaled *= 3.5;
            const EstimateReport s = interpolation_check(scaled, R, {}, variant, 4.0);
            homogeneity = std::max({homogeneity, std::abs(s.lhs / (3.5 * r.lhs) - 1.0), std::abs(s.rhs / (3.5 * r.rhs) - 1.0)});
            ratios.push_back(r.ratio);
        }
        for (std::size_t k = 1; k < ratios.size(); ++k) spread = std::max(spread, std::abs(ratios[k] / ratios[k - 1] - 1.0));
    }
    const bool pass = partition <= 1e-12 && recon <= 1e-12 && derivative <= derivative_bound &&
                      exponent <= exponent_bound && spread <= 0.2 && homogeneity <= 1e-12;
    return {pass, (Detail() << "partition " << sci(partition) << ", reconstruction " << sci(recon) << " (<= 1e-12), Bernstein "
                            << derivative << " (<= 2), " << exponent << " (<= " << exponent_bound
                            << "), interpolation change under R-doubling " << sci(spread) << " (<= 0.2), homogeneity "
                            << sci(homogeneity) << " (<= 1e-12)")
                       .str()};
}

Outcome polynomial_growth() {
    const auto rows = run_harness(R"(
experiment = "growth"
n = 512
L = 64*pi
alpha = 0
dt = 0.02
t_end = 20
diag_every = 10
initial = "random_bump"
forcing = "kolmogorov"
forcing_amplitude = 0.1
forcing_wavenumber = 2
)",
                                  "growth");
    bool monotone = false, linear_lo = false, linear_hi = false;
    Detail d;
    for (const auto& r : rows) {
        if (r.claim.starts_with("u_ulR/(t+1)^5 non-increasing")) {
            monotone = r.pass();
            d << "max relative rise of u_ulR/(t+1)^5 after t = 2: " << sci(r.value) << " (<= 0)";
        }
        if (r.claim == "mean-value within factor 2 of linear (baseline_rest)") {
            (r.upper ? linear_hi : linear_lo) = r.pass();
            d << (r.upper ? ", max M/linear " : ", min M/linear ") << sci(r.value);
        }
    }
    return {monotone && linear_lo && linear_hi, d.str()};
}

// Few stream-function bumps near the origin.
VectorField compact_bumps(const Grid& g) {
    const std::vector<std::pair<Vec2, double>> c{{{1.0, -0.5}, 1.0}, {{-2.0, 1.5}, -0.7}, {{0.5, 2.5}, 0.5}};
    const ScalarField psi = ScalarField::from_function(g, [&](Vec2 x) {
        double s = 0.0;
        for (const auto& [p, a] : c) s += a * bump(x, p, 3.0);
        return s;
    });
    VectorField u = perp_gradient(psi);
    u *= 1.0 / u.max_abs();
    return u;
}

Outcome convergence_hygiene() {
    // dt-halving.
    const Grid g(64, 2.0 * pi);
    ScalarField w0 = random_smooth(g, 7, 4);
    w0 *= 5.0;
    const SolverState s0 = init_state(w0);
    const auto solve_dt = [&](double dt) { return final_state(Solver(plain_config(g, 0.1, dt, 0.4)), s0).omega(); };
    const ScalarField ref = solve_dt(0.4 / 640);
    const double e1 = max_diff(solve_dt(0.4 / 20), ref);
    const double e2 = max_diff(solve_dt(0.4 / 40), ref);
    const double e3 = max_diff(solve_dt(0.4 / 80), ref);
    const double order = std::min(std::log2(e1 / e2), std::log2(e2 / e3));

    // n-doubling at a fixed dt, compared on the coarse points.
    const auto solve_n = [](int n) {
        const Grid gn(n, 2.0 * pi);
        ScalarField w = random_smooth(Grid(16, 2.0 * pi), 11, 4);
        w *= 5.0;
        // Same trigonometric polynomial sampled on the finer grid.
        const ScalarField wn = n == 16 ? w : upsample(w, n / 16);
        return final_state(Solver(plain_config(gn, 0.1, 0.4 / 200, 0.4)), init_state(wn)).omega();
    };
    const ScalarField fine = solve_n(256);
    std::vector<double> errs;
    for (int n : {16, 32, 64}) {
        const ScalarField c = solve_n(n);
        const int step = 256 / n;
        double e = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e = std::max(e, std::abs(c(i, j) - fine(i * step, j * step)));
        errs.push_back(e / fine.max_abs());
    }
    // Faster than any fixed order: each doubling gains more than the previous
    // one until round-off.
    const double floor = 1e-11;
    bool spectral = true;
    double prev_gain = 1.0;
    for (std::size_t k = 1; k < errs.size(); ++k) {
        if (errs[k - 1] <= floor) break;
        const double gain = errs[k - 1] / std::max(errs[k], 1e-300);
        if (errs[k] > floor && (gain < 16.0 || gain < prev_gain)) spectral = false;
        prev_gain = gain;
    }

    // L-doubling at equal spacing: inner diagnostics of a compact-bump run.
    const auto inner = [](double L, int n) {
        const Grid gl(n, L);
        SolverConfig cfg = plain_config(gl, 0.0, 0.02, 5.0);
        cfg.diag_every = 25;
        std::vector<std::array<double, 3>> rows;
        Solver(cfg).run(init_state(compact_bumps(gl)), [&](const SolverState& s, const DiagnosticRow&) {
            const VectorField u = s.velocity();
            const ScalarField w = s.omega();
            rows.push_back({ball_norm(u, 2.0, 4.0, {}), ball_norm(u, 2.0, 8.0, {}), ball_norm(w, kInfinity, 8.0, {})});
        });
        return rows;
    };
    const auto small = inner(16.0 * pi, 128);
    const auto large = inner(32.0 * pi, 256);
    double change = small.size() == large.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; k < std::min(small.size(), large.size()); ++k)
        for (int q = 0; q < 3; ++q) change = std::max(change, std::abs(small[k][q] / large[k][q] - 1.0));

    // The ul sup over strided centers against half the stride.
    const Grid gs(256, 32.0 * pi);
    const VectorField us = harness::initial_velocity("random_bump", gs, 3, 1.0);
    double stride_change = 0.0;
    for (double R : {4.0, 8.0, 16.0}) {
        const int s = default_center_stride(gs, R);
        stride_change = std::max(stride_change, std::abs(ul_norm(us, 2.0, R, s) / ul_norm(us, 2.0, R, std::max(1, s / 2)) - 1.0));
    }

    const bool pass = order >= 2.0 && spectral && change < 0.01 && stride_change <= 0.05;
    return {pass, (Detail() << "dt order " << order << " (>= 2), n-doubling errors " << sci(errs[0]) << " " << sci(errs[1])
                            << " " << sci(errs[2]) << (spectral ? " (spectral)" : " (not spectral)")
                            << ", L-doubling inner change " << sci(change) << " (< 1%), stride-halving change "
                            << sci(stride_change) << " (<= 5%)")
                       .str()};
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Taylor-Green oracle", taylor_green_oracle},
        {"linear-growth baseline", linear_growth_baseline},
        {"maximum principle", maximum_principle},
        {"pressure identities", pressure_identities},
        {"kernel-split cross-validation", kernel_split},
        {"pressure lemma uniformity", lemma02_uniformity},
        {"weight convolution lemma", weight_lemma},
        {"divergence-free truncation", truncation},
        {"Littlewood-Paley and interpolation", littlewood_paley},
        {"polynomial-growth diagnostic", polynomial_growth},
        {"convergence hygiene", convergence_hygiene},
    };
    std::set<int> selected;
    for (int k = 1; k < argc; ++k) selected.insert(std::stoi(argv[k]));

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[k].first << ": " << o.detail << " ["
                  << sci(seconds_since(t0)) << " s]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
