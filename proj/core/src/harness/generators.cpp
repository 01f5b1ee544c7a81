#include "ulnse/harness/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ulnse/operators.hpp"
#include "ulnse/spectral.hpp"

namespace ulnse::harness {

namespace {

constexpr double pi = std::numbers::pi;

VectorField normalized(VectorField u, double amplitude) {
    const double m = u.max_abs();
    if (m > 0.0) u *= amplitude / m;
    return u;
}

// Stream function with random coefficients on the box modes accepted by
// `keep`, each scaled by `profile(|k|)`.
template <class Keep, class Profile>
ScalarField random_stream(const Grid& g, std::mt19937_64& rng, Keep keep, Profile profile) {
    std::normal_distribution<double> d(0.0, 1.0);
    Spectrum s(g);
    for (int r = 0; r < s.rows(); ++r) {
        for (int c = 0; c < s.cols(); ++c) {
            const Wave w = s.wave(r, c);
            // Draw for every mode so the sequence does not depend on the filter.
            const Complex z(d(rng), d(rng));
            if (w.zero() || w.k1_odd != w.k1 || w.k2_odd != w.k2 || !keep(w)) continue;
            s.at(r, c) = z * profile(std::sqrt(w.k_sq));
        }
    }
    return inverse(s);
}

double bump(double s) { return s >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - s)); }

VectorField random_bump(const Grid& g, std::mt19937_64& rng) {
    const double L = g.length();
    const double r_lo = std::max(0.03 * L, 4.0 * g.spacing());
    const double r_hi = std::max(0.06 * L, 8.0 * g.spacing());
    std::uniform_real_distribution<double> radius(r_lo, r_hi);
    std::uniform_real_distribution<double> sign(-1.0, 1.0);
    constexpr int count = 12;
    struct Bump {
        Vec2 c;
        double a;
        double amp;
    };
    std::vector<Bump> bumps;
    for (int k = 0; k < count; ++k) {
        const double a = radius(rng);
        std::uniform_real_distribution<double> pos(-0.5 * L + a, 0.5 * L - a);
        const double x = pos(rng);
        const double y = pos(rng);
        bumps.push_back({{x, y}, a, sign(rng) * a});
    }
    const ScalarField psi = ScalarField::from_function(g, [&](Vec2 x) {
        double v = 0.0;
        for (const Bump& b : bumps) v += b.amp * bump((x - b.c).norm2() / (b.a * b.a));
        return v;
    });
    return perp_gradient(psi);
}

}  // namespace

const std::vector<std::string>& initial_generators() {
    static const std::vector<std::string> names{"taylor_green", "random_bump", "random_band", "rough_highfreq",
                                                "sinusoidal_nondecaying"};
    return names;
}

const std::vector<std::string>& forcing_generators() {
    static const std::vector<std::string> names{"none", "constant", "kolmogorov", "random_smooth"};
    return names;
}

VectorField initial_velocity(const std::string& name, const Grid& g, std::uint64_t seed, double amplitude) {
    std::mt19937_64 rng(seed);
    const double k0 = g.fundamental();
    if (name == "taylor_green") {
        const double periods = g.length() / (2.0 * pi);
        if (std::abs(periods - std::round(periods)) > 1e-9 * periods) {
            throw std::invalid_argument("taylor_green needs a box length that is a multiple of 2 pi");
        }
        return VectorField::from_function(g, [amplitude](Vec2 x) {
            return Vec2{amplitude * std::sin(x.x) * std::cos(x.y), -amplitude * std::cos(x.x) * std::sin(x.y)};
        });
    }
    if (name == "random_bump") return normalized(random_bump(g, rng), amplitude);
    if (name == "random_band") {
        const ScalarField psi = random_stream(
            g, rng,
            [k0](const Wave& w) {
                const double m = std::sqrt(w.k_sq) / k0;
                return m >= 2.0 && m <= 6.0;
            },
            [](double) { return 1.0; });
        return normalized(perp_gradient(psi), amplitude);
    }
    if (name == "rough_highfreq") {
        const double kc = (2.0 / 3.0) * 0.5 * g.n() * k0;
        // E(k) ~ 1/k: |u_k| ~ 1/k per mode, so |psi_k| ~ k^-2.
        const ScalarField psi = random_stream(
            g, rng, [kc](const Wave& w) { return std::sqrt(w.k_sq) <= kc; }, [](double k) { return 1.0 / (k * k); });
        return normalized(perp_gradient(psi), amplitude);
    }
    if (name == "sinusoidal_nondecaying") {
        const ScalarField psi = random_stream(
            g, rng, [](const Wave& w) { return std::abs(w.m1) <= 3 && w.m2 <= 3; }, [](double) { return 1.0; });
        return normalized(perp_gradient(psi), amplitude);
    }
    throw std::invalid_argument("unknown initial data generator '" + name + "'");
}

std::optional<VectorField> forcing_field(const std::string& name, const Grid& g, std::uint64_t seed, double amplitude,
                                         int wavenumber) {
    if (name == "none") return std::nullopt;
    if (name == "constant") return VectorField::constant(g, {amplitude, 0.0});
    if (name == "kolmogorov") {
        if (wavenumber < 1 || wavenumber >= g.n() / 3) {
            throw std::invalid_argument("kolmogorov forcing wavenumber must lie in [1, n/3)");
        }
        const double k = g.wavenumber(wavenumber);
        return VectorField::from_function(g, [=](Vec2 x) { return Vec2{amplitude * std::sin(k * x.y), 0.0}; });
    }
    if (name == "random_smooth") {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const ScalarField psi = random_stream(
            g, rng, [](const Wave& w) { return std::abs(w.m1) <= 3 && w.m2 <= 3; }, [](double) { return 1.0; });
        return normalized(perp_gradient(psi), amplitude);
    }
    throw std::invalid_argument("unknown forcing generator '" + name + "'");
}

}  // namespace ulnse::harness
