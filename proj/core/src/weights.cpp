#include "ulnse/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ulnse/norms.hpp"

namespace ulnse {

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }

double theta_like(double c, double r) { return 1.0 / (c + r * r * r); }

}  // namespace

void WeightFamily::validate() const {
    if (!(R > 0.0)) throw std::invalid_argument("weight scale R must be positive");
    if (eps < 0.0) throw std::invalid_argument("exponential rate must be nonnegative");
}

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

double smoothstep_derivative(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 6.0 * t * (1.0 - t);
}

namespace {
double flat(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double flat_derivative(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = flat(t);
    return a / (a + flat(1.0 - t));
}

double smooth_step_derivative(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = flat(t);
    const double b = flat(1.0 - t);
    const double s = a + b;
    return (flat_derivative(t) * b + a * flat_derivative(1.0 - t)) / (s * s);
}

// |S'|^2 / S = 36 (1-t)^2 / (3-2t) peaks at t -> 0.
double cutoff_gradient_constant() { return 2.0 * std::sqrt(3.0); }

double eval_weight(const WeightFamily& w, Vec2 x) {
    const double r = (x - w.x0).norm();
    switch (w.kind) {
        case WeightKind::theta: return theta_like(1.0, r);
        case WeightKind::theta_scaled: return theta_like(w.R * w.R * w.R, r);
        case WeightKind::exp: return std::exp(-w.eps * r);
        case WeightKind::exp_smooth: return std::exp(-std::sqrt(1.0 + w.eps * w.eps * r * r));
        case WeightKind::cutoff: return smoothstep(2.0 - r / w.R);
        case WeightKind::cutoff_smooth: return smooth_step(2.0 - r / w.R);
    }
    return 0.0;
}

Vec2 weight_gradient(const WeightFamily& w, Vec2 x) {
    const Vec2 z = x - w.x0;
    const double r = z.norm();
    switch (w.kind) {
        case WeightKind::theta:
        case WeightKind::theta_scaled: {
            const double c = w.kind == WeightKind::theta ? 1.0 : w.R * w.R * w.R;
            const double d = c + r * r * r;
            return (-3.0 * r / (d * d)) * z;
        }
        case WeightKind::exp:
            if (r == 0.0) return {};
            return (-w.eps * std::exp(-w.eps * r) / r) * z;
        case WeightKind::exp_smooth: {
            const double s = std::sqrt(1.0 + w.eps * w.eps * r * r);
            return (-w.eps * w.eps * std::exp(-s) / s) * z;
        }
        case WeightKind::cutoff: {
            if (r == 0.0) return {};
            const double t = 2.0 - r / w.R;
            return (-smoothstep_derivative(t) / (r * w.R)) * z;
        }
        case WeightKind::cutoff_smooth: {
            if (r == 0.0) return {};
            const double t = 2.0 - r / w.R;
            return (-smooth_step_derivative(t) / (r * w.R)) * z;
        }
    }
    return {};
}

ScalarField sample_weight(const WeightFamily& w, const Grid& grid) {
    w.validate();
    WeightFamily centered = w;
    centered.x0 = {};
    ScalarField out(grid);
    for (int i = 0; i < grid.n(); ++i) {
        for (int j = 0; j < grid.n(); ++j) out(i, j) = eval_weight(centered, grid.min_image(grid.point(i, j) - w.x0));
    }
    return out;
}

VectorField sample_weight_gradient(const WeightFamily& w, const Grid& grid) {
    w.validate();
    WeightFamily centered = w;
    centered.x0 = {};
    VectorField out{ScalarField(grid), ScalarField(grid)};
    for (int i = 0; i < grid.n(); ++i) {
        for (int j = 0; j < grid.n(); ++j) {
            const Vec2 g = weight_gradient(centered, grid.min_image(grid.point(i, j) - w.x0));
            out.x(i, j) = g.x;
            out.y(i, j) = g.y;
        }
    }
    return out;
}

double weighted_norm(const ScalarField& f, const WeightFamily& w, double p) {
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("weighted_norm needs a finite exponent p >= 1");
    const ScalarField ws = sample_weight(w, f.grid());
    auto fv = f.values();
    auto wv = ws.values();
    double s = 0.0;
    for (std::size_t k = 0; k < fv.size(); ++k) s += wv[k] * std::pow(std::abs(fv[k]), p);
    return std::pow(s * f.grid().cell_area(), 1.0 / p);
}

double weighted_norm(const VectorField& u, const WeightFamily& w, double p) {
    return weighted_norm(magnitude(u), w, p);
}

int default_center_stride(const Grid& grid, double R) {
    return std::max(1, static_cast<int>(std::lround(R / (4.0 * grid.spacing()))));
}

double ul_norm(const ScalarField& f, double p, double R, const std::vector<std::pair<int, int>>& centers) {
    if (centers.empty()) throw std::invalid_argument("ul_norm needs at least one center");
    const BallStencil st = make_ball_stencil(f.grid(), R);
    const std::vector<double> vals = ball_norm_scan(f, p, st, centers);
    return *std::max_element(vals.begin(), vals.end());
}

double ul_norm(const ScalarField& f, double p, double R, int stride) {
    if (stride <= 0) stride = default_center_stride(f.grid(), R);
    return ul_norm(f, p, R, strided_centers(f.grid(), stride));
}

double ul_norm(const VectorField& u, double p, double R, int stride) { return ul_norm(magnitude(u), p, R, stride); }

double weighted_ball_integral(const ScalarField& f, double p, double R, const WeightFamily& weight, double s,
                              int stride) {
    const Grid& g = f.grid();
    if (stride <= 0) stride = default_center_stride(g, R);
    const auto centers = strided_centers(g, stride);
    const BallStencil st = make_ball_stencil(g, R);
    const std::vector<double> norms = ball_norm_scan(f, p, st, centers);
    WeightFamily centered = weight;
    centered.x0 = {};
    const double cell = std::pow(stride * g.spacing(), 2);
    double acc = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const Vec2 xc = g.point(centers[c].first, centers[c].second);
        acc += eval_weight(centered, g.min_image(xc - weight.x0)) * std::pow(norms[c], s);
    }
    return acc * cell;
}

double z_functional(const VectorField& u, double R, Vec2 y0, int stride) {
    const Grid& g = u.x.grid();
    if (!(R >= 1.0)) throw std::invalid_argument("Z functional needs R >= 1");
    if (2.0 * R > 0.5 * g.length() * (1.0 + 1e-12)) {
        throw std::invalid_argument("Z functional: cutoff support 2R = " + std::to_string(2.0 * R) +
                                    " exceeds half the box length");
    }
    if (stride <= 0) stride = default_center_stride(g, R);
    const int n = g.n();
    const double h = g.spacing();

    // Cutoff phi_{R,0} as a weighted stencil on its support.
    std::vector<std::pair<int, int>> offs;
    std::vector<double> phi;
    const int reach = std::min(n / 2 - 1, static_cast<int>(std::ceil(2.0 * R / h)));
    const WeightFamily cut = WeightFamily::cutoff(R);
    for (int di = -reach; di <= reach; ++di) {
        for (int dj = -reach; dj <= reach; ++dj) {
            const double v = eval_weight(cut, {di * h, dj * h});
            if (v > 0.0) {
                offs.emplace_back(di, dj);
                phi.push_back(v);
            }
        }
    }

    ScalarField energy_density(g);
    {
        auto ex = u.x.values();
        auto ey = u.y.values();
        auto e = energy_density.values();
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ex[k] * ex[k] + ey[k] * ey[k];
    }

    const auto centers = strided_centers(g, stride);
    std::vector<double> inner(centers.size());
    const long count = static_cast<long>(centers.size());
#pragma omp parallel for schedule(static)
    for (long c = 0; c < count; ++c) {
        const auto [ci, cj] = centers[static_cast<std::size_t>(c)];
        double s = 0.0;
        for (std::size_t k = 0; k < offs.size(); ++k) {
            s += phi[k] * energy_density(wrap(ci + offs[k].first, n), wrap(cj + offs[k].second, n));
        }
        inner[static_cast<std::size_t>(c)] = s * g.cell_area();
    }

    const WeightFamily outer = WeightFamily::theta_scaled(R);
    const double cell = std::pow(stride * h, 2);
    double acc = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const Vec2 xc = g.point(centers[c].first, centers[c].second);
        acc += eval_weight(outer, g.min_image(xc - y0)) * inner[c];
    }
    return acc * cell;
}

double theta_convolution_tail(double L, Vec2 x0, Vec2 y0) {
    const double m = std::max(x0.norm(), y0.norm());
    const double a = 0.5 * L - m;
    if (a <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::pi * (1.0 / (4.0 * std::pow(a, 4)) + m / (5.0 * std::pow(a, 5)));
}

EstimateReport theta_convolution_check(double R, Vec2 x0, Vec2 y0, const Grid& quad) {
    const WeightFamily wx = WeightFamily::theta_scaled(R, x0);
    const WeightFamily wy = WeightFamily::theta_scaled(R, y0);
    const int n = quad.n();
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            const Vec2 x = quad.point(i, j);
            row += eval_weight(wx, x) * eval_weight(wy, x);
        }
        lhs += row;
    }
    lhs *= quad.cell_area();
    const double tail = theta_convolution_tail(quad.length(), x0, y0);
    if (!(tail <= 0.01 * lhs)) {
        throw std::domain_error("theta convolution: tail outside the box (" + std::to_string(tail) +
                                ") exceeds 1% of the integral; use a larger box");
    }
    const double rhs = eval_weight(wx, y0) / R;
    EstimateReport rep = EstimateReport::make("theta_convolution", lhs, rhs);
    rep.params = {{"R", R}, {"dist", (x0 - y0).norm()}, {"tail_bound", tail}, {"L", quad.length()}};
    return rep;
}

}  // namespace ulnse
