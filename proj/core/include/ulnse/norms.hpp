#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "ulnse/fields.hpp"

namespace ulnse {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Box quadrature (sum |f|^p h^2)^{1/p}; p = infinity gives the grid maximum.
double lp_norm(const ScalarField& f, double p);
/// Same for the Euclidean magnitude of u.
double lp_norm(const VectorField& u, double p);

/// Grid offsets (di, dj) with h |(di, dj)| <= R. Offsets are taken from
/// [-n/2, n/2) so that R = L/2 still visits every grid point at most once.
struct BallStencil {
    double radius = 0.0;
    std::vector<std::pair<int, int>> offsets;
};
BallStencil make_ball_stencil(const Grid& grid, double R);

/// Throws std::invalid_argument unless 0 < R <= L/2.
void check_ball_radius(const Grid& grid, double R);

/// ||f||_{L^p(B^R_{x0})}: midpoint rule over the periodic disk mask around an
/// arbitrary point x0.
double ball_norm(const ScalarField& f, double p, double R, Vec2 x0);
double ball_norm(const VectorField& u, double p, double R, Vec2 x0);

/// Sum of density * h^2 over the stencil ball centered at grid point (ci, cj).
double ball_sum(const ScalarField& density, const BallStencil& stencil, int ci, int cj);
/// Max of density over the stencil ball centered at (ci, cj).
double ball_max(const ScalarField& density, const BallStencil& stencil, int ci, int cj);

/// Grid indices of centers spaced by `stride` points in each direction.
std::vector<std::pair<int, int>> strided_centers(const Grid& grid, int stride);

/// Per-center ball norms of f (p-th root applied), evaluated in parallel.
std::vector<double> ball_norm_scan(const ScalarField& f, double p, const BallStencil& stencil,
                                   const std::vector<std::pair<int, int>>& centers);

}  // namespace ulnse
