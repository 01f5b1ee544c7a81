#include "ulnse/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ulnse {

namespace {
const Complex I{0.0, 1.0};
}

ScalarField partial_x(const ScalarField& f) {
    return filtered(f, [](const Wave& w) { return I * w.k1_odd; });
}

ScalarField partial_y(const ScalarField& f) {
    return filtered(f, [](const Wave& w) { return I * w.k2_odd; });
}

VectorField gradient(const ScalarField& f) {
    const Spectrum s = forward(f);
    Spectrum sx = s;
    Spectrum sy = s;
    sx.apply([](const Wave& w) { return I * w.k1_odd; });
    sy.apply([](const Wave& w) { return I * w.k2_odd; });
    return {inverse(sx), inverse(sy)};
}

VectorField perp_gradient(const ScalarField& f) {
    const Spectrum s = forward(f);
    Spectrum sx = s;
    Spectrum sy = s;
    sx.apply([](const Wave& w) { return I * w.k2_odd; });
    sy.apply([](const Wave& w) { return -I * w.k1_odd; });
    return {inverse(sx), inverse(sy)};
}

ScalarField divergence(const VectorField& u) {
    Spectrum a = forward(u.x);
    Spectrum b = forward(u.y);
    a.apply([](const Wave& w) { return I * w.k1_odd; });
    b.apply([](const Wave& w) { return I * w.k2_odd; });
    return inverse(a += b);
}

ScalarField curl(const VectorField& u) {
    Spectrum a = forward(u.y);
    Spectrum b = forward(u.x);
    a.apply([](const Wave& w) { return I * w.k1_odd; });
    b.apply([](const Wave& w) { return I * w.k2_odd; });
    return inverse(a -= b);
}

ScalarField laplacian(const ScalarField& f) {
    return filtered(f, [](const Wave& w) { return Complex(-w.k_sq, 0.0); });
}

double mean_tolerance(const ScalarField& f) { return 1e-10 * std::max(1.0, f.max_abs()); }

ScalarField inverse_laplacian(const ScalarField& f) {
    const double m = f.mean();
    if (std::abs(m) > mean_tolerance(f)) {
        throw std::domain_error("inverse Laplacian of a field with nonzero mean " + std::to_string(m) +
                                " is ill-posed on the periodic box");
    }
    return filtered(f, [](const Wave& w) { return w.zero() ? Complex{} : Complex(-1.0 / w.k_sq, 0.0); });
}

VectorField biot_savart(const Spectrum& omega_hat) {
    // u1 = d2 Theta, u2 = -d1 Theta, Theta^ = omega^ / |k|^2. The denominator
    // uses the first-derivative symbols so that rot u = omega on every mode
    // except the three pure Nyquist modes, which first derivatives cannot see.
    Spectrum sx = omega_hat;
    Spectrum sy = omega_hat;
    auto inv = [](const Wave& w) {
        const double d = w.k1_odd * w.k1_odd + w.k2_odd * w.k2_odd;
        return d == 0.0 ? 0.0 : 1.0 / d;
    };
    sx.apply([&](const Wave& w) { return I * w.k2_odd * inv(w); });
    sy.apply([&](const Wave& w) { return -I * w.k1_odd * inv(w); });
    return {inverse(sx), inverse(sy)};
}

VectorField biot_savart(const ScalarField& omega) {
    const double m = omega.mean();
    if (std::abs(m) > mean_tolerance(omega)) {
        throw std::domain_error("vorticity has nonzero mean " + std::to_string(m) +
                                "; no periodic velocity field exists");
    }
    return biot_savart(forward(omega));
}

bool retained_by_dealias(const Wave& w, int n) {
    return 3 * std::max(std::abs(w.m1), std::abs(w.m2)) <= n;
}

Spectrum& dealias(Spectrum& s) {
    const int n = s.grid().n();
    return s.apply([n](const Wave& w) { return retained_by_dealias(w, n) ? 1.0 : 0.0; });
}

ScalarField dealias(const ScalarField& f) {
    Spectrum s = forward(f);
    return inverse(dealias(s));
}

ScalarField dealiased_product(const ScalarField& a, const ScalarField& b) {
    ScalarField p = dealias(a) * dealias(b);
    return dealias(p);
}

}  // namespace ulnse
