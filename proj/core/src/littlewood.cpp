#include "ulnse/littlewood.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulnse/norms.hpp"
#include "ulnse/operators.hpp"
#include "ulnse/spectral.hpp"

namespace ulnse {

namespace {

const Complex I{0.0, 1.0};

double quintic(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double gradient_lp(const ScalarField& f, double p) {
    const VectorField g = gradient(f);
    return lp_norm(g, p);
}

double matrix_gradient_l2(const VectorField& u) {
    const VectorField a = gradient(u.x);
    const VectorField b = gradient(u.y);
    const double n1 = lp_norm(a, 2.0);
    const double n2 = lp_norm(b, 2.0);
    return std::sqrt(n1 * n1 + n2 * n2);
}

ScalarField block_unchecked(const ScalarField& f, int j);

}  // namespace

double phi0(double xi) { return 1.0 - quintic(2.0 * std::abs(xi) - 1.0); }

double dyadic_psi(double xi) { return phi0(0.5 * xi) - phi0(xi); }

DyadicSpec DyadicSpec::for_grid(const Grid& grid) {
    const double k0 = grid.fundamental();
    DyadicSpec s;
    s.j_min = static_cast<int>(std::ceil(std::log2(k0) - 1e-12));
    s.j_max = static_cast<int>(std::floor(std::log2(k0 * grid.n() / 3.0) + 1e-12));
    return s;
}

ScalarField dyadic_block(const ScalarField& f, int j, const DyadicSpec& spec) {
    if (j < spec.j_min || j > spec.j_max) {
        throw std::out_of_range("dyadic block " + std::to_string(j) + " outside [" + std::to_string(spec.j_min) +
                                ", " + std::to_string(spec.j_max) + "]");
    }
    return block_unchecked(f, j);
}

namespace {
ScalarField block_unchecked(const ScalarField& f, int j) {
    const double scale = std::ldexp(1.0, -j);
    return filtered(f, [scale](const Wave& w) { return dyadic_psi(std::sqrt(w.k_sq) * scale); });
}
}  // namespace

ScalarField low_pass(const ScalarField& f, int j) {
    const double scale = std::ldexp(1.0, -j);
    return filtered(f, [scale](const Wave& w) { return phi0(std::sqrt(w.k_sq) * scale); });
}

double partition_residual(const Grid& grid, const DyadicSpec& spec) {
    const Spectrum probe(grid);
    const double cap = std::ldexp(1.0, spec.j_max);
    double worst = 0.0;
    for (int r = 0; r < probe.rows(); ++r) {
        for (int c = 0; c < probe.cols(); ++c) {
            const double xi = std::sqrt(probe.wave(r, c).k_sq);
            if (xi > cap) continue;
            double s = phi0(xi * std::ldexp(1.0, -spec.j_min));
            for (int j = spec.j_min; j <= spec.j_max; ++j) s += dyadic_psi(xi * std::ldexp(1.0, -j));
            worst = std::max(worst, std::abs(s - 1.0));
        }
    }
    return worst;
}

double besov_norm(const ScalarField& f, double sigma, double p, double q, bool homogeneous, const DyadicSpec& spec) {
    if (!(q >= 1.0)) throw std::invalid_argument("Besov exponent q must lie in [1, inf]");
    // The inhomogeneous sum starts at j = 1 even below j_min, where blocks
    // are computable but partly or entirely empty.
    const int first = homogeneous ? spec.j_min : 1;
    std::vector<double> terms;
    for (int j = first; j <= spec.j_max; ++j) {
        terms.push_back(std::pow(2.0, sigma * j) * lp_norm(block_unchecked(f, j), p));
    }
    double sum = 0.0;
    if (std::isinf(q)) {
        for (double t : terms) sum = std::max(sum, t);
    } else {
        for (double t : terms) sum += std::pow(t, q);
        sum = std::pow(sum, 1.0 / q);
    }
    if (homogeneous) return sum;
    return lp_norm(low_pass(f, 1), p) + sum;
}

ScalarField riesz_compose(const ScalarField& f, int i, int j) {
    if (i < 0 || i > 1 || j < 0 || j > 1) throw std::invalid_argument("Riesz axis must be 0 or 1");
    return filtered(f, [i, j](const Wave& w) {
        if (w.zero()) return 0.0;
        const double a = i == j ? (i == 0 ? w.k1 : w.k2) : w.k1_odd;
        const double b = i == j ? a : w.k2_odd;
        return -a * b / w.k_sq;
    });
}

VectorField helmholtz_recover(const ScalarField& h1, const ScalarField& h2) {
    const Spectrum a = forward(h1);
    const Spectrum b = forward(h2);
    Spectrum u1(h1.grid());
    Spectrum u2(h1.grid());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
            const Wave k = a.wave(r, c);
            if (k.zero()) continue;
            u1.at(r, c) = -I * (k.k1_odd * a.at(r, c) - k.k2_odd * b.at(r, c)) / k.k_sq;
            u2.at(r, c) = -I * (k.k2_odd * a.at(r, c) + k.k1_odd * b.at(r, c)) / k.k_sq;
        }
    }
    return {inverse(u1), inverse(u2)};
}

EstimateReport interpolation_check(const VectorField& u, double R, Vec2 x0, InterpolationVariant variant, double p) {
    const Grid& g = u.x.grid();
    const double umax = u.max_abs();
    double outside = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
            if (g.min_image(g.point(i, j) - x0).norm() > 2.0 * R) {
                outside = std::max(outside, std::hypot(u.x(i, j), u.y(i, j)));
            }
        }
    }
    if (outside > 1e-12 * umax) {
        throw std::domain_error("interpolation_check: field does not vanish outside B^{2R}_{x0} (max |u| there " +
                                std::to_string(outside) + ")");
    }
    const ScalarField rot = curl(u);
    const ScalarField div = divergence(u);
    const double l2 = lp_norm(u, 2.0);
    EstimateReport rep;
    if (variant == InterpolationVariant::L3) {
        rep = EstimateReport::make("interpolation_L3", lp_norm(u, 3.0),
                                   std::pow(l2, 5.0 / 6.0) * std::pow(rot.max_abs() + div.max_abs(), 1.0 / 6.0));
    } else {
        if (!(p > 2.0) || std::isinf(p)) throw std::invalid_argument("Linf variant needs 2 < p < inf");
        const double theta = 0.5 - 1.0 / (2.0 * (p - 1.0));
        rep = EstimateReport::make("interpolation_Linf", umax,
                                   std::pow(l2, theta) * std::pow(lp_norm(rot, p) + lp_norm(div, p), 1.0 - theta));
        rep.params["p"] = p;
        rep.params["theta"] = theta;
    }
    rep.params["R"] = R;
    return rep;
}

std::pair<EstimateReport, EstimateReport> bernstein_check(const ScalarField& f, int j, double p, double q,
                                                          const DyadicSpec& spec) {
    if (!(p >= 1.0 && q >= p)) throw std::invalid_argument("Bernstein check needs 1 <= p <= q");
    const ScalarField block = dyadic_block(f, j, spec);
    const double scale = std::ldexp(1.0, j);
    EstimateReport first = EstimateReport::make("bernstein_derivative", lp_norm(block, p), gradient_lp(block, p) / scale);
    const ScalarField low = low_pass(f, j);
    const double expo = std::isinf(q) ? 2.0 / p : 2.0 / p - 2.0 / q;
    EstimateReport second = EstimateReport::make("bernstein_exponent", lp_norm(low, q),
                                                 std::pow(scale, expo) * lp_norm(low, p));
    for (EstimateReport* r : {&first, &second}) {
        r->params = {{"j", static_cast<double>(j)}, {"p", p}, {"q", q}};
    }
    return {first, second};
}

EstimateReport ladyzhenskaya_check(const VectorField& U) {
    const double l4 = lp_norm(U, 4.0);
    return EstimateReport::make("ladyzhenskaya", l4 * l4, lp_norm(U, 2.0) * matrix_gradient_l2(U));
}

EstimateReport ball_interpolation_check(const VectorField& u, double R, Vec2 x0) {
    const VectorField a = gradient(u.x);
    const VectorField b = gradient(u.y);
    ScalarField grad_sq(u.x.grid());
    auto gv = grad_sq.values();
    for (std::size_t k = 0; k < gv.size(); ++k) {
        gv[k] = std::sqrt(a.x.values()[k] * a.x.values()[k] + a.y.values()[k] * a.y.values()[k] +
                          b.x.values()[k] * b.x.values()[k] + b.y.values()[k] * b.y.values()[k]);
    }
    const double l3 = ball_norm(u, 3.0, R, x0);
    const double l2 = ball_norm(u, 2.0, R, x0);
    const double d2 = ball_norm(grad_sq, 2.0, R, x0);
    EstimateReport rep = EstimateReport::make("ball_interpolation", l3 * l3 * l3, l2 * l2 * std::sqrt(l2 * l2 + d2 * d2));
    rep.params = {{"R", R}, {"x0_1", x0.x}, {"x0_2", x0.y}};
    return rep;
}

EstimateReport embedding_check(const ScalarField& f, const DyadicSpec& spec) {
    return EstimateReport::make("besov_embedding", lp_norm(f, 3.0), besov_norm(f, 1.0 / 6.0, 12.0 / 5.0, 3.0, false, spec));
}

double almost_orthogonality(const ScalarField& f, const DyadicSpec& spec) {
    const double total = std::pow(lp_norm(f, 2.0), 2);
    if (total == 0.0) return 1.0;
    double s = std::pow(lp_norm(low_pass(f, spec.j_min), 2.0), 2);
    for (int j = spec.j_min; j <= spec.j_max; ++j) s += std::pow(lp_norm(dyadic_block(f, j, spec), 2.0), 2);
    return s / total;
}

}  // namespace ulnse
