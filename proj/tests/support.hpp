#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "ulnse/fields.hpp"
#include "ulnse/operators.hpp"
#include "ulnse/spectral.hpp"

namespace testsupport {

using ulnse::Grid;
using ulnse::ScalarField;
using ulnse::Vec2;
using ulnse::VectorField;

constexpr double pi = std::numbers::pi;

inline ScalarField random_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ScalarField f(g);
    for (double& v : f.values()) v = d(rng);
    return f;
}

/// Smooth random field: random coefficients on the modes |m| <= kmax.
inline ScalarField random_smooth(const Grid& g, std::uint64_t seed, int kmax = 4, bool zero_mean = true) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    ulnse::Spectrum s(g);
    for (int r = 0; r < s.rows(); ++r) {
        for (int c = 0; c < s.cols(); ++c) {
            const auto w = s.wave(r, c);
            if (std::abs(w.m1) > kmax || w.m2 > kmax) continue;
            if (zero_mean && w.zero()) continue;
            s.at(r, c) = ulnse::Complex(d(rng), d(rng));
        }
    }
    // Real-valued on the m2 = 0 column.
    ScalarField f = ulnse::inverse(s);
    f *= 1.0 / std::max(1e-300, f.max_abs());
    if (zero_mean) f += -f.mean();
    return f;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
    return m;
}

inline double max_diff(const VectorField& a, const VectorField& b) {
    return std::max(max_diff(a.x, b.x), max_diff(a.y, b.y));
}

inline VectorField taylor_green(const Grid& g, double amp = 1.0) {
    return VectorField::from_function(g, [amp](Vec2 x) {
        return Vec2{amp * std::sin(x.x) * std::cos(x.y), -amp * std::cos(x.x) * std::sin(x.y)};
    });
}

/// Compactly supported smooth radial bump exp(1 - 1/(1 - (r/a)^2)).
inline double bump(Vec2 x, Vec2 c, double a) {
    const double s = (x - c).norm2() / (a * a);
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s));
}

/// Divergence-free compact bump u = perp grad(bump), analytic.
inline VectorField bump_velocity(const Grid& g, Vec2 c, double a, double amp = 1.0) {
    return VectorField::from_function(g, [=](Vec2 x) {
        const Vec2 z = x - c;
        const double s = z.norm2() / (a * a);
        if (s >= 1.0) return Vec2{};
        const double b = std::exp(1.0 - 1.0 / (1.0 - s));
        // d/dx_i b = b * (-2 z_i / a^2) / (1 - s)^2
        const double f = -2.0 * b / (a * a * (1.0 - s) * (1.0 - s));
        return Vec2{amp * f * z.y, -amp * f * z.x};
    });
}

}  // namespace testsupport
