#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "ulnse/divfree.hpp"
#include "ulnse/norms.hpp"

using namespace ulnse;
using namespace testsupport;

namespace {

double rel_l2(const ScalarField& a, const ScalarField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        num += std::pow(a.values()[k] - b.values()[k], 2);
        den += b.values()[k] * b.values()[k];
    }
    return std::sqrt(num / den);
}

double rel_l2(const VectorField& a, const VectorField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.x.values().size(); ++k) {
        num += std::pow(a.x.values()[k] - b.x.values()[k], 2) + std::pow(a.y.values()[k] - b.y.values()[k], 2);
        den += b.x.values()[k] * b.x.values()[k] + b.y.values()[k] * b.y.values()[k];
    }
    return std::sqrt(num / den);
}

// Divergence-free compact field from a sum of scalar bumps.
VectorField compact_divfree(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::vector<std::pair<Vec2, double>> c;
    for (int k = 0; k < 4; ++k) c.push_back({{pos(rng), pos(rng)}, amp(rng)});
    const ScalarField psi = ScalarField::from_function(g, [&](Vec2 x) {
        double s = 0.0;
        for (const auto& [p, a] : c) s += a * bump(x, p, 3.0);
        return s;
    });
    return perp_gradient(psi);
}

// Non-decaying divergence-free field u = perp grad(sin(a x) sin(b y)).
VectorField sinusoidal(const Grid& g, double a, double b) {
    return VectorField::from_function(g, [=](Vec2 x) {
        return Vec2{b * std::sin(a * x.x) * std::cos(b * x.y), -a * std::cos(a * x.x) * std::sin(b * x.y)};
    });
}

double max_outside(const VectorField& f, double radius) {
    const Grid& g = f.x.grid();
    double m = 0.0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.point(i, j).norm() > radius) m = std::max({m, std::abs(f.x(i, j)), std::abs(f.y(i, j))});
    return m;
}

double max_diff_inside(const VectorField& a, const VectorField& b, double radius) {
    const Grid& g = a.x.grid();
    double m = 0.0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.point(i, j).norm() <= radius)
                m = std::max({m, std::abs(a.x(i, j) - b.x(i, j)), std::abs(a.y(i, j) - b.y(i, j))});
    return m;
}

}  // namespace

TEST_CASE("stream function base points") {
    const auto pts = stream_base_points();
    CHECK(pts.size() == 16);
    for (const Vec2 p : pts) CHECK(p.norm() < 1.0);
}

TEST_CASE("stream function by path integrals") {
    const Grid g(128, 2.0 * pi);
    CHECK(stream_function(VectorField{ScalarField(g), ScalarField(g)}).max_abs() == 0.0);

    const ScalarField exact = ScalarField::from_function(g, [](Vec2 x) { return std::sin(x.x) * std::sin(x.y); });
    const ScalarField theta = stream_function(perp_gradient(exact));
    CHECK(rel_l2(theta, exact) <= 1e-3);
    CHECK(rel_l2(stream_function_spectral(perp_gradient(exact)), exact) <= 1e-12);

    const Grid big(256, 32.0);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const VectorField u = compact_divfree(big, seed);
        const double err = rel_l2(perp_gradient(stream_function(u)), u);
        MESSAGE("roundtrip error " << err);
        CHECK(err <= 1e-3);
    }

    CHECK_THROWS_AS(stream_function(VectorField::from_function(g, [](Vec2 x) { return Vec2{std::sin(x.x), 0.0}; })),
                    std::domain_error);
}

TEST_CASE("stream function of a field with nonzero mean") {
    const Grid g(64, 2.0 * pi);
    VectorField u = perp_gradient(random_smooth(g, 3, 4));
    u.x += 0.7;
    u.y += -0.2;
    const ScalarField path = stream_function(u);
    const ScalarField spectral = stream_function_spectral(u);
    CHECK(rel_l2(path, spectral) <= 1e-3);
}

TEST_CASE("stream function growth bounds") {
    const Grid g(256, 64.0);
    // Bounded non-decaying field: growth quotient bounded.
    const VectorField u = sinusoidal(g, 2.0 * pi * 5.0 / 64.0, 2.0 * pi * 3.0 / 64.0);
    const ScalarField theta = stream_function(u);
    double hi = 0.0;
    for (double r : {0.0, 4.0, 8.0, 16.0, 24.0})
        for (double a : {0.0, 1.3, 2.9}) hi = std::max(hi, stream_growth(theta, {r * std::cos(a), r * std::sin(a)}));
    CHECK(hi < 2.0 * std::sqrt(pi) * 64.0 / (2.0 * pi * 3.0));

    // Compact field: the quotient decays away from the support.
    const VectorField c = compact_divfree(g, 5);
    const ScalarField tc = stream_function(c);
    double prev = kInfinity;
    for (double r : {8.0, 14.0, 20.0, 26.0}) {
        double m = 0.0;
        for (double a : {0.3, 1.7, 3.1, 4.6}) m = std::max(m, stream_growth(tc, {r * std::cos(a), r * std::sin(a)}));
        CHECK(m <= prev);
        prev = m;
    }
}

TEST_CASE("divergence-free truncation") {
    // The box is 4N with a fixed number of points, so the cutoff transition
    // always spans the same number of grid cells.
    const double a = 2.0 * pi * 2.0 / 32.0;
    const double b = 2.0 * pi * 3.0 / 32.0;
    std::vector<double> amp;
    for (double N : {8.0, 16.0, 32.0}) {
        const Grid g(512, 4.0 * N);
        const VectorField u = sinusoidal(g, a, b);
        const Truncation t = truncate_divfree(u, N);
        MESSAGE("N = " << N << ": spectral div " << t.spectral_divergence << ", product-rule residual "
                       << t.divergence_residual);
        CHECK(t.spectral_divergence <= 1e-8);
        CHECK(t.divergence_residual <= 1e-10);
        CHECK(max_diff_inside(t.field, u, N) <= 1e-10);
        CHECK(max_outside(t.field, 2.0 * N) == 0.0);
        amp.push_back(ul_norm(t.field, 2.0, 1.0) / ul_norm(u, 2.0, 1.0));
    }
    MESSAGE("amplification " << amp[0] << " " << amp[1] << " " << amp[2]);
    for (double v : amp) CHECK(std::abs(v / amp[1] - 1.0) <= 0.2);

    const Grid g(128, 32.0);
    const VectorField u = sinusoidal(g, a, b);
    CHECK_THROWS_AS(truncate_divfree(u, 9.0), std::invalid_argument);
    CHECK_THROWS_AS(truncate_divfree(u, 4.0, WeightKind::theta), std::invalid_argument);
    CHECK(divfree_check(biot_savart(random_smooth(Grid(64, 2.0 * pi), 1, 8))) <= 1e-10);
    const Grid small(64, 16.0);
    const VectorField ramp = VectorField::from_function(small, [](Vec2 x) { return Vec2{x.x * bump(x, {}, 6.0), 0.0}; });
    CHECK(divfree_check(ramp) > 0.1);
}

TEST_CASE("truncation is a projection on compactly supported fields") {
    const Grid g(256, 64.0);
    // u = perp grad psi with psi supported in |x| <= 7, sampled analytically.
    const auto psi_of = [](Vec2 x) { return bump(x, {1.0, -2.0}, 4.0) - 0.5 * bump(x, {-2.0, 1.0}, 3.0); };
    const ScalarField psi = ScalarField::from_function(g, psi_of);
    const VectorField u = VectorField::from_function(g, [](Vec2 x) {
        const auto grad = [](Vec2 y, Vec2 c, double a) {
            const Vec2 z = y - c;
            const double s = z.norm2() / (a * a);
            if (s >= 1.0) return Vec2{};
            const double f = -2.0 * bump(y, c, a) / (a * a * (1.0 - s) * (1.0 - s));
            return f * z;
        };
        const Vec2 d = grad(x, {1.0, -2.0}, 4.0) - 0.5 * grad(x, {-2.0, 1.0}, 3.0);
        return Vec2{d.y, -d.x};
    });
    for (double N : {8.0, 12.0}) {
        const Truncation t = truncate_divfree(u, N, psi);
        CHECK(max_diff(t.field, u) <= 1e-10);
    }
}
