#include "ulnse/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "ulnse/operators.hpp"
#include "ulnse/weights.hpp"

namespace ulnse {

namespace {

const Complex I{0.0, 1.0};

double divergence_tolerance(const VectorField& u) { return 1e-8 * std::max(1.0, u.max_abs()); }

bool all_finite(const Spectrum& s) {
    for (const Complex& c : s.coefficients()) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
    const double ratio = t_end / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        throw std::invalid_argument("t_end must be an integer multiple of dt");
    }
    if (diag_every < 1) throw std::invalid_argument("diag_every must be at least 1");
    if (diag_local) {
        if (!(diag_R >= 1.0)) throw std::invalid_argument("diag_R must be at least 1");
        if (2.0 * diag_R > 0.5 * grid.length() * (1.0 + 1e-12)) {
            throw std::invalid_argument("diag_R too large: the Z cutoff support 2R must fit in half the box");
        }
    }
    if (forcing) {
        if (!(forcing->x.grid() == grid)) throw std::invalid_argument("forcing lives on a different grid");
        const double div = divergence(*forcing).max_abs();
        if (div > divergence_tolerance(*forcing)) {
            throw std::invalid_argument("forcing must be divergence free (grid-max div " + std::to_string(div) + ")");
        }
    }
}

long SolverConfig::total_steps() const { return std::lround(t_end / dt); }

VectorField SolverState::velocity() const {
    VectorField u = biot_savart(omega_hat);
    u.x += mean_u.x;
    u.y += mean_u.y;
    return u;
}

SolverState init_state(const VectorField& u0) {
    const double div = divergence(u0).max_abs();
    if (div > divergence_tolerance(u0)) {
        throw std::invalid_argument("initial velocity is not divergence free (grid-max div " + std::to_string(div) + ")");
    }
    SolverState s(u0.x.grid());
    s.omega_hat = forward(curl(u0));
    s.omega_hat.at(0, 0) = 0.0;
    s.mean_u = u0.mean();
    s.mean_origin = s.mean_u;
    return s;
}

SolverState init_state(const ScalarField& omega0, Vec2 mean_u) {
    if (std::abs(omega0.mean()) > mean_tolerance(omega0)) {
        throw std::invalid_argument("initial vorticity must have zero box mean");
    }
    SolverState s(omega0.grid());
    s.omega_hat = forward(omega0);
    s.omega_hat.at(0, 0) = 0.0;
    s.mean_u = mean_u;
    s.mean_origin = mean_u;
    return s;
}

Vec2 mean_velocity_at(Vec2 m0, double alpha, Vec2 g_mean, double elapsed) {
    if (alpha == 0.0) return m0 + elapsed * g_mean;
    const double e = std::exp(-alpha * elapsed);
    return e * m0 + ((1.0 - e) / alpha) * g_mean;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,omega_inf,u_ulR,Z,energy,enstrophy,div_res,mean_u1,mean_u2\n";
    char buf[512];
    for (const DiagnosticRow& r : traj.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.omega_inf,
                      r.u_ulR, r.Z, r.energy, r.enstrophy, r.div_res, r.mean_u1, r.mean_u2);
        out << buf;
    }
}

Solver::Solver(SolverConfig cfg) : cfg_(std::move(cfg)), rot_g_(cfg_.grid) {
    cfg_.validate();
    if (cfg_.forcing) {
        rot_g_ = forward(curl(*cfg_.forcing));
        rot_g_.at(0, 0) = 0.0;
        dealias(rot_g_);
        g_mean_ = cfg_.forcing->mean();
    }
}

const std::vector<double>& Solver::factors(int substeps) const {
    auto it = factor_cache_.find(substeps);
    if (it != factor_cache_.end()) return it->second;
    const double h = cfg_.dt / substeps;
    std::vector<double> e;
    e.reserve(rot_g_.coefficients().size());
    for (int r = 0; r < rot_g_.rows(); ++r) {
        for (int c = 0; c < rot_g_.cols(); ++c) e.push_back(std::exp(-(rot_g_.wave(r, c).k_sq + cfg_.alpha) * h));
    }
    return factor_cache_.emplace(substeps, std::move(e)).first->second;
}

Spectrum Solver::nonlinear(const Spectrum& omega_hat, Vec2 mean_u) const {
    Spectrum w = omega_hat;
    dealias(w);
    VectorField u = biot_savart(w);
    Spectrum dx = w;
    Spectrum dy = w;
    dx.apply([](const Wave& k) { return I * k.k1_odd; });
    dy.apply([](const Wave& k) { return I * k.k2_odd; });
    const ScalarField wx = inverse(dx);
    const ScalarField wy = inverse(dy);
    ScalarField adv(w.grid());
    auto a = adv.values();
    auto ux = u.x.values();
    auto uy = u.y.values();
    auto gx = wx.values();
    auto gy = wy.values();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = (ux[k] + mean_u.x) * gx[k] + (uy[k] + mean_u.y) * gy[k];
    Spectrum n = forward(adv);
    dealias(n);
    n *= -1.0;
    n += rot_g_;
    n.at(0, 0) = 0.0;
    return n;
}

void Solver::advance(SolverState& s, int substeps) const {
    if (substeps < 1) throw std::invalid_argument("substeps must be positive");
    if (s.step_dt != cfg_.dt || s.steps == 0) {
        // New step size: restart the closed-form mean from the current state.
        s.t_origin = s.t;
        s.mean_origin = s.mean_u;
        s.steps = 0;
        s.step_dt = cfg_.dt;
    }
    const std::vector<double>& e = factors(substeps);
    const double h = cfg_.dt / substeps;
    const std::size_t count = e.size();
    for (int sub = 0; sub < substeps; ++sub) {
        const double t0 = s.steps * cfg_.dt + sub * h;
        const Vec2 m0 = mean_velocity_at(s.mean_origin, cfg_.alpha, g_mean_, t0);
        const Vec2 m1 = mean_velocity_at(s.mean_origin, cfg_.alpha, g_mean_, t0 + h);
        const Spectrum& a = s.omega_hat;
        const Spectrum na = nonlinear(a, m0);
        Spectrum b(a.grid());
        {
            auto bv = b.coefficients();
            auto av = a.coefficients();
            auto nv = na.coefficients();
            for (std::size_t k = 0; k < count; ++k) bv[k] = e[k] * (av[k] + h * nv[k]);
        }
        const Spectrum nb = nonlinear(b, m1);
        auto av = s.omega_hat.coefficients();
        auto nav = na.coefficients();
        auto nbv = nb.coefficients();
        for (std::size_t k = 0; k < count; ++k) av[k] = e[k] * av[k] + 0.5 * h * (e[k] * nav[k] + nbv[k]);
    }
    s.omega_hat.at(0, 0) = 0.0;
    ++s.steps;
    s.t = s.t_origin + s.steps * cfg_.dt;
    s.mean_u = mean_velocity_at(s.mean_origin, cfg_.alpha, g_mean_, s.steps * cfg_.dt);
    if (!all_finite(s.omega_hat)) {
        throw std::runtime_error("non-finite vorticity after step " + std::to_string(s.steps) + " (t = " +
                                 std::to_string(s.t) + ")");
    }
}

int Solver::cfl_substeps(const SolverState& s) const {
    const double umax = s.velocity().max_abs();
    if (umax == 0.0) return 1;
    const double dt_cfl = cfg_.grid.spacing() / (2.0 * umax);
    const double need = std::ceil(cfg_.dt / dt_cfl - 1e-12);
    if (!(need <= 1e6)) {
        throw std::runtime_error("CFL needs more than 1e6 sub-steps (max|u| = " + std::to_string(umax) + ")");
    }
    return std::max(1, static_cast<int>(need));
}

DiagnosticRow Solver::diagnose(const SolverState& s) const {
    DiagnosticRow r;
    const ScalarField w = s.omega();
    const VectorField u = s.velocity();
    const double area = cfg_.grid.cell_area();
    r.t = s.t;
    r.omega_inf = w.max_abs();
    r.omega_min = w.min();
    r.omega_max = w.max();
    double e = 0.0;
    for (std::size_t k = 0; k < u.x.values().size(); ++k) e += u.x.values()[k] * u.x.values()[k] + u.y.values()[k] * u.y.values()[k];
    r.energy = e * area;
    double z = 0.0;
    for (double v : w.values()) z += v * v;
    r.enstrophy = z * area;
    r.div_res = divergence(u).max_abs();
    r.mean_u1 = s.mean_u.x;
    r.mean_u2 = s.mean_u.y;
    if (cfg_.diag_local) {
        r.u_ulR = ul_norm(u, 2.0, cfg_.diag_R);
        r.Z = z_functional(u, cfg_.diag_R, cfg_.diag_center);
    }
    return r;
}

Trajectory Solver::run(SolverState s, const Observer& observer) const {
    Trajectory traj;
    auto record = [&](int substeps) {
        DiagnosticRow row = diagnose(s);
        row.substeps = substeps;
        traj.rows.push_back(row);
        if (observer) observer(s, row);
    };
    record(1);
    const long total = cfg_.total_steps();
    for (long k = 1; k <= total; ++k) {
        int m = 1;
        try {
            m = cfl_substeps(s);
            advance(s, m);
        } catch (const std::exception& ex) {
            throw RunError(std::string("step ") + std::to_string(k) + " failed: " + ex.what() +
                               " (max|u| = " + std::to_string(s.velocity().max_abs()) + ")",
                           traj);
        }
        if (k % cfg_.diag_every == 0 || k == total) record(m);
    }
    return traj;
}

SolverState step(const SolverState& s, const SolverConfig& cfg) {
    const Solver solver(cfg);
    SolverState next = s;
    solver.advance(next, 1);
    return next;
}

}  // namespace ulnse
