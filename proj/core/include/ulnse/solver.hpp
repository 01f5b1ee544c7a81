#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ulnse/fields.hpp"
#include "ulnse/spectral.hpp"

namespace ulnse {

struct SolverConfig {
    Grid grid{8, 1.0};
    double alpha = 0.0;
    double dt = 1e-3;
    double t_end = 1.0;
    /// Divergence-free forcing; nullopt means g = 0.
    std::optional<VectorField> forcing;
    int diag_every = 1;
    /// Scale of the uniformly-local and Z diagnostics.
    double diag_R = 1.0;
    /// Center y0 of the Z diagnostic.
    Vec2 diag_center{};
    /// Skip the (comparatively costly) ul/Z scans when false.
    bool diag_local = true;

    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
    long total_steps() const;
};

/// Vorticity coefficients plus the box-mean velocity, which the vorticity does
/// not determine on the torus. The mean follows d/dt m = -alpha m + mean(g)
/// and is evaluated in closed form from its origin so that it carries no
/// accumulated rounding.
struct SolverState {
    Spectrum omega_hat;
    Vec2 mean_u{};
    double t = 0.0;
    double t_origin = 0.0;
    Vec2 mean_origin{};
    long steps = 0;
    double step_dt = 0.0;

    explicit SolverState(const Grid& g) : omega_hat(g) {}
    const Grid& grid() const { return omega_hat.grid(); }
    ScalarField omega() const { return inverse(omega_hat); }
    /// biot_savart(omega) + mean_u.
    VectorField velocity() const;
};

/// From a velocity field: rejects div u0 above 1e-8 (scaled by max(1, |u0|)).
SolverState init_state(const VectorField& u0);
/// From a vorticity field with prescribed box-mean velocity; rejects nonzero
/// mean vorticity.
SolverState init_state(const ScalarField& omega0, Vec2 mean_u = {});

/// Box mean of the velocity at time t from (m0, t0) under constant mean forcing.
Vec2 mean_velocity_at(Vec2 m0, double alpha, Vec2 g_mean, double elapsed);

struct DiagnosticRow {
    double t = 0.0;
    double omega_inf = 0.0;
    double u_ulR = 0.0;
    double Z = 0.0;
    double energy = 0.0;
    double enstrophy = 0.0;
    double div_res = 0.0;
    double mean_u1 = 0.0;
    double mean_u2 = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    int substeps = 1;
};

struct Trajectory {
    std::vector<DiagnosticRow> rows;
};

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Thrown by run(); carries the trajectory recorded before the failure.
class RunError : public std::runtime_error {
public:
    RunError(const std::string& what, Trajectory partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

/// Integrating-factor Heun stepper with cached factors.
class Solver {
public:
    explicit Solver(SolverConfig cfg);

    const SolverConfig& config() const { return cfg_; }
    Vec2 forcing_mean() const { return g_mean_; }

    /// Advances by cfg.dt using `substeps` equal sub-steps.
    void advance(SolverState& s, int substeps = 1) const;
    /// Sub-steps needed to satisfy dt/m <= h / (2 max|u|).
    int cfl_substeps(const SolverState& s) const;
    DiagnosticRow diagnose(const SolverState& s) const;

    using Observer = std::function<void(const SolverState&, const DiagnosticRow&)>;
    /// Steps to t_end, recording a row every diag_every steps (and at the
    /// start and end). Step failures throw RunError.
    Trajectory run(SolverState s, const Observer& observer = {}) const;

private:
    Spectrum nonlinear(const Spectrum& omega_hat, Vec2 mean_u) const;
    const std::vector<double>& factors(int substeps) const;

    SolverConfig cfg_;
    Spectrum rot_g_;
    Vec2 g_mean_{};
    mutable std::map<int, std::vector<double>> factor_cache_;
};

/// One step of cfg.dt (no CFL sub-stepping).
SolverState step(const SolverState& s, const SolverConfig& cfg);

}  // namespace ulnse
