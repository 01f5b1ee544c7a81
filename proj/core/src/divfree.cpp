#include "ulnse/divfree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ulnse/norms.hpp"
#include "ulnse/operators.hpp"
#include "ulnse/spectral.hpp"

namespace ulnse {

namespace {

void require_divfree(const VectorField& u) {
    const double div = divfree_check(u);
    if (div > 1e-8 * std::max(1.0, u.max_abs())) {
        throw std::domain_error("field is not divergence free (grid-max div " + std::to_string(div) + ")");
    }
}

// Cumulative integral of samples f (derivative df) on the uniform abscissae
// a0 + k h, from the point b (value fb, derivative dfb) to every abscissa.
// Trapezoid panels with the Euler-Maclaurin end correction
// -w^2/12 (f'(right) - f'(left)), fourth order. No wrap: the path stays in the box.
std::vector<double> integral_from(const std::vector<double>& f, const std::vector<double>& df, double a0, double h,
                                  double b, double fb, double dfb) {
    const int n = static_cast<int>(f.size());
    auto panel = [](double w, double fl, double fr, double dl, double dr) {
        return 0.5 * w * (fl + fr) - w * w / 12.0 * (dr - dl);
    };
    std::vector<double> c(n, 0.0);
    int k0 = static_cast<int>(std::floor((b - a0) / h));
    k0 = std::clamp(k0, 0, n - 1);
    const double xk = a0 + k0 * h;
    c[k0] = -panel(b - xk, f[k0], fb, df[k0], dfb);
    if (k0 + 1 < n) {
        c[k0 + 1] = panel(xk + h - b, fb, f[k0 + 1], dfb, df[k0 + 1]);
        for (int i = k0 + 2; i < n; ++i) c[i] = c[i - 1] + panel(h, f[i - 1], f[i], df[i - 1], df[i]);
    }
    for (int i = k0 - 1; i >= 0; --i) c[i] = c[i + 1] - panel(h, f[i], f[i + 1], df[i], df[i + 1]);
    return c;
}

}  // namespace

std::vector<Vec2> stream_base_points() {
    constexpr int count = 16;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    std::vector<Vec2> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double r = std::sqrt((k + 0.5) / count);
        pts.push_back({r * std::cos(k * golden), r * std::sin(k * golden)});
    }
    return pts;
}

ScalarField stream_function(const VectorField& u) {
    require_divfree(u);
    const Grid& g = u.x.grid();
    const int n = g.n();
    const double h = g.spacing();
    const double a0 = g.coord(0);
    const Spectrum s1 = forward(u.x);
    const Spectrum s2 = forward(u.y);
    Spectrum d2u1 = s1;
    d2u1.apply([](const Wave& k) { return Complex(0.0, k.k2_odd); });
    Spectrum d1u2 = s2;
    d1u2.apply([](const Wave& k) { return Complex(0.0, k.k1_odd); });
    const ScalarField d2u1_grid = inverse(d2u1);
    const auto bases = stream_base_points();

    ScalarField theta(g);
    std::vector<double> column(n);
    std::vector<double> dcolumn(n);
    for (const Vec2 b : bases) {
        // Horizontal leg along x2 = b.y: integral of -u2.
        std::vector<double> row = interpolate_on_row(s2, b.y);
        std::vector<double> drow = interpolate_on_row(d1u2, b.y);
        for (double& v : row) v = -v;
        for (double& v : drow) v = -v;
        const std::vector<double> horiz =
            integral_from(row, drow, a0, h, b.x, -interpolate_at(s2, b), -interpolate_at(d1u2, b));
        // Vertical legs along each x1 column: integral of u1 from b.y.
        const std::vector<double> u1_row = interpolate_on_row(s1, b.y);
        const std::vector<double> du1_row = interpolate_on_row(d2u1, b.y);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                column[j] = u.x(i, j);
                dcolumn[j] = d2u1_grid(i, j);
            }
            const std::vector<double> vert = integral_from(column, dcolumn, a0, h, b.y, u1_row[i], du1_row[i]);
            for (int j = 0; j < n; ++j) theta(i, j) += horiz[i] + vert[j];
        }
    }
    theta *= 1.0 / static_cast<double>(bases.size());
    theta += -theta.mean();
    return theta;
}

ScalarField stream_function_spectral(const VectorField& u) {
    const Grid& g = u.x.grid();
    Spectrum w = forward(curl(u));
    w.apply([](const Wave& k) { return k.zero() ? 0.0 : 1.0 / k.k_sq; });
    ScalarField theta = inverse(w);
    const Vec2 m = u.mean();
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
            const Vec2 x = g.point(i, j);
            theta(i, j) += m.x * x.y - m.y * x.x;
        }
    }
    theta += -theta.mean();
    return theta;
}

Truncation truncate_divfree(const VectorField& u, double N, WeightKind cutoff) {
    require_divfree(u);
    return truncate_divfree(u, N, stream_function_spectral(u), cutoff);
}

Truncation truncate_divfree(const VectorField& u, double N, const ScalarField& theta, WeightKind cutoff) {
    const Grid& g = u.x.grid();
    if (!(N > 0.0)) throw std::invalid_argument("truncation radius must be positive");
    if (2.0 * N > 0.5 * g.length() * (1.0 + 1e-12)) {
        throw std::invalid_argument("truncation radius too large: the ball of radius 2N = " + std::to_string(2.0 * N) +
                                    " does not fit in the box");
    }
    if (cutoff != WeightKind::cutoff && cutoff != WeightKind::cutoff_smooth) {
        throw std::invalid_argument("truncation needs a cutoff weight kind");
    }
    const WeightFamily phi_family{cutoff, N, {}, 0.0};
    const int n = g.n();

    // Pin the constant in Theta to its mean on the transition annulus.
    double shift = 0.0;
    long count = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double r = g.point(i, j).norm();
            if (r >= N && r <= 2.0 * N) {
                shift += theta(i, j);
                ++count;
            }
        }
    }
    if (count > 0) shift /= static_cast<double>(count);

    const ScalarField div_u = divergence(u);
    // Theta carries a linear part when u has a nonzero box mean; differentiate
    // it analytically and the periodic remainder spectrally.
    const Vec2 m = u.mean();
    ScalarField periodic = theta;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec2 x = g.point(i, j);
            periodic(i, j) -= m.x * x.y - m.y * x.x;
        }
    }
    VectorField grad_theta = gradient(periodic);
    grad_theta.x += -m.y;
    grad_theta.y += m.x;
    Truncation out{VectorField{ScalarField(g), ScalarField(g)}, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Vec2 x = g.point(i, j);
            const double phi = eval_weight(phi_family, x);
            const Vec2 dphi = weight_gradient(phi_family, x);
            const double th = theta(i, j) - shift;
            // perp grad phi = (d2 phi, -d1 phi)
            out.field.x(i, j) = u.x(i, j) * phi + th * dphi.y;
            out.field.y(i, j) = u.y(i, j) * phi - th * dphi.x;
            const double res = phi * div_u(i, j) + u.x(i, j) * dphi.x + u.y(i, j) * dphi.y +
                               grad_theta.x(i, j) * dphi.y - grad_theta.y(i, j) * dphi.x;
            out.divergence_residual = std::max(out.divergence_residual, std::abs(res));
        }
    }
    out.spectral_divergence = divfree_check(out.field);
    return out;
}

double divfree_check(const VectorField& u) { return divergence(u).max_abs(); }

double stream_growth(const ScalarField& theta, Vec2 x0) {
    return ball_norm(theta, 2.0, 1.0, x0) / (x0.norm() + 1.0);
}

}  // namespace ulnse
