#include "ulnse/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ulnse {

namespace {

ScalarField abs_power(const ScalarField& f, double p) {
    ScalarField out(f.grid());
    auto src = f.values();
    auto dst = out.values();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = std::pow(std::abs(src[k]), p);
    return out;
}

void check_exponent(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must lie in [1, inf], got " + std::to_string(p));
}

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

double lp_norm(const ScalarField& f, double p) {
    check_exponent(p);
    if (std::isinf(p)) return f.max_abs();
    double s = 0.0;
    for (double v : f.values()) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid().cell_area(), 1.0 / p);
}

double lp_norm(const VectorField& u, double p) { return lp_norm(magnitude(u), p); }

void check_ball_radius(const Grid& grid, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("ball radius must be positive");
    if (R > 0.5 * grid.length() * (1.0 + 1e-12)) {
        throw std::invalid_argument("ball radius " + std::to_string(R) + " exceeds half the box length " +
                                    std::to_string(0.5 * grid.length()) + "; the periodic mask would overlap itself");
    }
}

BallStencil make_ball_stencil(const Grid& grid, double R) {
    check_ball_radius(grid, R);
    const int n = grid.n();
    const double h = grid.spacing();
    const int reach = std::min(n / 2, static_cast<int>(std::floor(R / h)) + 1);
    const double r2 = R * R * (1.0 + 1e-12);
    BallStencil st;
    st.radius = R;
    for (int di = -reach; di <= reach; ++di) {
        if (di < -n / 2 || di >= n / 2) continue;
        for (int dj = -reach; dj <= reach; ++dj) {
            if (dj < -n / 2 || dj >= n / 2) continue;
            const double d2 = h * h * static_cast<double>(di * di + dj * dj);
            if (d2 <= r2) st.offsets.emplace_back(di, dj);
        }
    }
    return st;
}

double ball_sum(const ScalarField& density, const BallStencil& stencil, int ci, int cj) {
    const int n = density.grid().n();
    double s = 0.0;
    for (const auto& [di, dj] : stencil.offsets) s += density(wrap(ci + di, n), wrap(cj + dj, n));
    return s * density.grid().cell_area();
}

double ball_max(const ScalarField& density, const BallStencil& stencil, int ci, int cj) {
    const int n = density.grid().n();
    double m = 0.0;
    for (const auto& [di, dj] : stencil.offsets) m = std::max(m, density(wrap(ci + di, n), wrap(cj + dj, n)));
    return m;
}

double ball_norm(const ScalarField& f, double p, double R, Vec2 x0) {
    check_exponent(p);
    const Grid& g = f.grid();
    check_ball_radius(g, R);
    const int n = g.n();
    const double r2 = R * R * (1.0 + 1e-12);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec2 d = g.min_image(g.point(i, j) - x0);
            if (d.norm2() > r2) continue;
            const double v = std::abs(f(i, j));
            if (std::isinf(p)) {
                acc = std::max(acc, v);
            } else {
                acc += std::pow(v, p);
            }
        }
    }
    if (std::isinf(p)) return acc;
    return std::pow(acc * g.cell_area(), 1.0 / p);
}

double ball_norm(const VectorField& u, double p, double R, Vec2 x0) { return ball_norm(magnitude(u), p, R, x0); }

std::vector<std::pair<int, int>> strided_centers(const Grid& grid, int stride) {
    if (stride < 1) throw std::invalid_argument("center stride must be positive");
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < grid.n(); i += stride) {
        for (int j = 0; j < grid.n(); j += stride) out.emplace_back(i, j);
    }
    return out;
}

std::vector<double> ball_norm_scan(const ScalarField& f, double p, const BallStencil& stencil,
                                   const std::vector<std::pair<int, int>>& centers) {
    check_exponent(p);
    const bool sup = std::isinf(p);
    const ScalarField density = sup ? abs(f) : abs_power(f, p);
    std::vector<double> out(centers.size());
    const long count = static_cast<long>(centers.size());
#pragma omp parallel for schedule(static)
    for (long c = 0; c < count; ++c) {
        const auto [ci, cj] = centers[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(c)] =
            sup ? ball_max(density, stencil, ci, cj) : std::pow(ball_sum(density, stencil, ci, cj), 1.0 / p);
    }
    return out;
}

}  // namespace ulnse
