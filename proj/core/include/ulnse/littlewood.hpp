#pragma once

#include <utility>

#include "ulnse/estimate.hpp"
#include "ulnse/fields.hpp"

namespace ulnse {

/// Radial low-pass profile: 1 for |xi| <= 1/2, 0 for |xi| >= 1, quintic
/// smoothstep in between.
double phi0(double xi);
/// phi0(xi/2) - phi0(xi), supported in 1/2 <= |xi| <= 2.
double dyadic_psi(double xi);

/// Block range representable on a grid: 2^{j_min} at the fundamental
/// wavenumber, 2^{j_max} below the dealiasing cap.
struct DyadicSpec {
    int j_min = 0;
    int j_max = 0;

    static DyadicSpec for_grid(const Grid& grid);
};

/// Delta_j f, multiplier psi(xi / 2^j). Throws std::out_of_range outside
/// [j_min, j_max].
ScalarField dyadic_block(const ScalarField& f, int j, const DyadicSpec& spec);
/// S_j f, multiplier phi0(xi / 2^j).
ScalarField low_pass(const ScalarField& f, int j);

/// max over grid frequencies with |xi| <= 2^{j_max} of
/// |phi0(xi/2^{j_min}) + sum_j psi(xi/2^j) - 1|.
double partition_residual(const Grid& grid, const DyadicSpec& spec);

/// Truncated Besov norm. Inhomogeneous: ||S_1 f||_p + (sum_{j=1}^{j_max}
/// (2^{sigma j} ||Delta_j f||_p)^q)^{1/q}; homogeneous: the sum over
/// [j_min, j_max]. q = infinity takes the max.
double besov_norm(const ScalarField& f, double sigma, double p, double q, bool homogeneous, const DyadicSpec& spec);

/// R_i R_j f with multiplier -xi_i xi_j / |xi|^2 (axes 0, 1), zero at xi = 0.
ScalarField riesz_compose(const ScalarField& f, int i, int j);

/// Velocity with prescribed divergence h1 and rotation h2 (rot = d1 u2 - d2 u1),
/// zero box mean.
VectorField helmholtz_recover(const ScalarField& h1, const ScalarField& h2);

enum class InterpolationVariant { L3, Linf };

/// L3: ||u||_3 vs ||u||_2^{5/6} (||rot u||_inf + ||div u||_inf)^{1/6}.
/// Linf: ||u||_inf vs ||u||_2^theta (||rot u||_p + ||div u||_p)^{1-theta},
/// theta = 1/2 - 1/(2(p-1)), 2 < p < inf.
/// u must vanish outside B^{2R}_{x0} (std::domain_error otherwise).
EstimateReport interpolation_check(const VectorField& u, double R, Vec2 x0, InterpolationVariant variant,
                                   double p = 4.0);

/// first:  ||Delta_j f||_p / (2^{-j} ||grad Delta_j f||_p)
/// second: ||S_j f||_q / (2^{j(2/p - 2/q)} ||S_j f||_p)
std::pair<EstimateReport, EstimateReport> bernstein_check(const ScalarField& f, int j, double p, double q,
                                                          const DyadicSpec& spec);

/// ||U||_4^2 vs ||U||_2 ||grad U||_2.
EstimateReport ladyzhenskaya_check(const VectorField& U);
/// ||u||^3_{L^3(B^R_{x0})} vs ||u||^2_{L^2(B^R_{x0})} ||u||_{W^{1,2}(B^R_{x0})}.
EstimateReport ball_interpolation_check(const VectorField& u, double R, Vec2 x0);
/// ||f||_3 vs ||f||_{B^{1/6}_{12/5,3}}.
EstimateReport embedding_check(const ScalarField& f, const DyadicSpec& spec);
/// (||S_{j_min} f||_2^2 + sum_j ||Delta_j f||_2^2) / ||f||_2^2.
double almost_orthogonality(const ScalarField& f, const DyadicSpec& spec);

}  // namespace ulnse
