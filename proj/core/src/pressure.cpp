#include "ulnse/pressure.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ulnse/operators.hpp"
#include "ulnse/spectral.hpp"
#include "ulnse/weights.hpp"

namespace ulnse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex I{0.0, 1.0};

double contract(const Sym2& k, double w11, double w12, double w22) {
    return k.xx * w11 + 2.0 * k.xy * w12 + k.yy * w22;
}

Sym2 tail_kernel(Vec2 z, const SplitSpec& spec) {
    const double r = z.norm();
    if (r <= 0.25 * spec.R) return {};
    const double s = 1.0 - spec.psi(r);
    const Sym2 k = kernel_eval(z);
    return {s * k.xx, s * k.xy, s * k.yy};
}

}  // namespace

Sym2 kernel_eval(Vec2 x) {
    const double r2 = x.norm2();
    if (r2 == 0.0) throw std::domain_error("pressure kernel is singular at the origin");
    const double c = 1.0 / (kTwoPi * r2 * r2);
    // |x|^2 - 2 x1^2 = x2^2 - x1^2; written this way the trace vanishes in floating point too.
    const double d = c * (x.y * x.y - x.x * x.x);
    return {d, -2.0 * c * x.x * x.y, -d};
}

std::array<Sym2, 2> kernel_gradient(Vec2 x) {
    const double r2 = x.norm2();
    if (r2 == 0.0) throw std::domain_error("pressure kernel is singular at the origin");
    const double c4 = 1.0 / (kTwoPi * r2 * r2);
    const double c6 = c4 / r2;
    const double z[2] = {x.x, x.y};
    auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    auto entry = [&](int i, int j, int l) {
        const double num = 2.0 * delta(i, j) * z[l] - 2.0 * delta(i, l) * z[j] - 2.0 * z[i] * delta(j, l);
        return num * c4 - 4.0 * z[l] * (delta(i, j) * r2 - 2.0 * z[i] * z[j]) * c6;
    };
    std::array<Sym2, 2> g;
    for (int l = 0; l < 2; ++l) g[l] = {entry(0, 0, l), entry(0, 1, l), entry(1, 1, l)};
    return g;
}

double SplitSpec::psi(double r) const { return smooth_step(2.0 - 4.0 * r / R); }

double SplitSpec::psi_derivative(double r) const { return -4.0 / R * smooth_step_derivative(2.0 - 4.0 * r / R); }

std::array<Sym2, 2> tail_kernel_gradient(Vec2 z, const SplitSpec& spec) {
    const double r = z.norm();
    if (r <= 0.25 * spec.R) return {};
    const double s = 1.0 - spec.psi(r);
    const double dpsi = spec.psi_derivative(r);
    const Sym2 k = kernel_eval(z);
    const auto dk = kernel_gradient(z);
    const double zl[2] = {z.x, z.y};
    std::array<Sym2, 2> g;
    for (int l = 0; l < 2; ++l) {
        const double a = -dpsi * zl[l] / r;
        g[l] = {a * k.xx + s * dk[l].xx, a * k.xy + s * dk[l].xy, a * k.yy + s * dk[l].yy};
    }
    return g;
}

double tail_kernel_gradient_norm(Vec2 z, const SplitSpec& spec) {
    const auto g = tail_kernel_gradient(z, spec);
    double s = 0.0;
    for (const auto& m : g) s += m.xx * m.xx + 2.0 * m.xy * m.xy + m.yy * m.yy;
    return std::sqrt(s);
}

ScalarField pressure_spectral(const TensorField& w) {
    const Spectrum a = forward(w.xx);
    const Spectrum b = forward(w.xy);
    const Spectrum c = forward(w.yy);
    Spectrum p(w.grid());
    for (int r = 0; r < p.rows(); ++r) {
        for (int col = 0; col < p.cols(); ++col) {
            const Wave k = p.wave(r, col);
            if (k.zero()) continue;
            p.at(r, col) = (k.k1 * k.k1 * a.at(r, col) + 2.0 * k.k1_odd * k.k2_odd * b.at(r, col) +
                            k.k2 * k.k2 * c.at(r, col)) /
                           k.k_sq;
        }
    }
    return inverse(p);
}

VectorField grad_p_spectral(const TensorField& w) { return gradient(pressure_spectral(w)); }

double near_field_profile(double rho, const SplitSpec& spec) {
    if (rho == 0.0) return 0.0;
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double a = 0.25 * spec.R;
    const double b = 0.5 * spec.R;
    const int panels = std::max(8, static_cast<int>(std::ceil(rho * (b - a) / std::numbers::pi)));
    const double width = (b - a) / panels;
    auto integrand = [&](double r) {
        const double s = rho * r;
        return spec.psi_derivative(r) * std::cyl_bessel_j(1.0, s) / s;
    };
    double acc = 0.0;
    for (int k = 0; k < panels; ++k) acc += Rule::integrate(integrand, a + k * width, a + (k + 1) * width);
    return 0.5 + acc;
}

SplitGradient grad_p_split_parts(const TensorField& w, const SplitSpec& spec) {
    const Grid& g = w.grid();
    const int n = g.n();
    const double half = 0.5 * g.length();

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (w.xx(i, j) == 0.0 && w.xy(i, j) == 0.0 && w.yy(i, j) == 0.0) continue;
            const Vec2 x = g.point(i, j);
            const double edge = std::min({x.x + half, half - x.x, x.y + half, half - x.y});
            if (edge < spec.R) {
                throw std::domain_error("kernel split: support of w reaches within " + std::to_string(edge) +
                                        " of the box boundary, need at least R = " + std::to_string(spec.R));
            }
        }
    }
    if (spec.refine < 1) throw std::invalid_argument("kernel split: refine must be positive");

    // Near part: multiplier i xi_l m_ij(xi) with m = (xi_i xi_j/|xi|^2 - delta_ij/2) 2G + delta_ij/2.
    const Spectrum a = forward(w.xx);
    const Spectrum b = forward(w.xy);
    const Spectrum c = forward(w.yy);
    Spectrum gx(g);
    Spectrum gy(g);
    std::unordered_map<long, double> profile;
    for (int r = 0; r < a.rows(); ++r) {
        for (int col = 0; col < a.cols(); ++col) {
            const Wave k = a.wave(r, col);
            if (k.zero()) continue;
            const long key = static_cast<long>(k.m1) * k.m1 + static_cast<long>(k.m2) * k.m2;
            auto it = profile.find(key);
            if (it == profile.end()) it = profile.emplace(key, near_field_profile(std::sqrt(k.k_sq), spec)).first;
            const double G2 = 2.0 * it->second;
            const double m11 = (k.k1 * k.k1 / k.k_sq - 0.5) * G2 + 0.5;
            const double m22 = (k.k2 * k.k2 / k.k_sq - 0.5) * G2 + 0.5;
            const double m12 = k.k1_odd * k.k2_odd / k.k_sq * G2;
            const Complex s = m11 * a.at(r, col) + 2.0 * m12 * b.at(r, col) + m22 * c.at(r, col);
            gx.at(r, col) = I * k.k1_odd * s;
            gy.at(r, col) = I * k.k2_odd * s;
        }
    }
    SplitGradient out{{inverse(gx), inverse(gy)}, {ScalarField(g), ScalarField(g)}};

    // Far part: sum over refined lattice points y of F(x - y) w(y) h^2. Offsets
    // span (-N, N), so a 2N periodic convolution reproduces the sum exactly.
    const int N = spec.refine * n;
    const double h = g.length() / N;
    const Grid padded(2 * N, 2.0 * g.length());
    auto pad = [&](const ScalarField& f) {
        const ScalarField fine = upsample(f, spec.refine);
        ScalarField big(padded);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) big(i, j) = fine(i, j);
        return forward(big);
    };
    const Spectrum src[3] = {pad(w.xx), pad(w.xy), pad(w.yy)};
    const double weight[3] = {1.0, 2.0, 1.0};
    Spectrum acc[2] = {Spectrum(padded), Spectrum(padded)};
    ScalarField kernel(padded);
    for (int l = 0; l < 2; ++l) {
        for (int c = 0; c < 3; ++c) {
#pragma omp parallel for schedule(static)
            for (int a = 0; a < 2 * N; ++a) {
                for (int b = 0; b < 2 * N; ++b) {
                    const Vec2 z{padded.mode(a) * h, padded.mode(b) * h};
                    const Sym2 d = tail_kernel_gradient(z, spec)[l];
                    kernel(a, b) = weight[c] * (c == 0 ? d.xx : c == 1 ? d.xy : d.yy);
                }
            }
            Spectrum k = forward(kernel);
            for (std::size_t q = 0; q < k.coefficients().size(); ++q) acc[l].data()[q] += k.data()[q] * src[c].data()[q];
        }
    }
    const ScalarField fx = inverse(acc[0]);
    const ScalarField fy = inverse(acc[1]);
    const double area = h * h;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.far.x(i, j) = fx(spec.refine * i, spec.refine * j) * area;
            out.far.y(i, j) = fy(spec.refine * i, spec.refine * j) * area;
        }
    }
    return out;
}

VectorField grad_p_kernel_split(const TensorField& w, const SplitSpec& spec) {
    return grad_p_split_parts(w, spec).total();
}

double tail_pressure_at(const TensorField& w, Vec2 x0, const SplitSpec& spec) {
    const Grid& g = w.grid();
    double acc = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
            const Sym2 k = tail_kernel(g.min_image(g.point(i, j) - x0), spec);
            acc += contract(k, w.xx(i, j), w.xy(i, j), w.yy(i, j));
        }
    }
    return acc * g.cell_area();
}

double subtracted_tail_kernel(Vec2 x, Vec2 y, Vec2 x0, const SplitSpec& spec) {
    const Sym2 a = tail_kernel(x - y, spec);
    const Sym2 b = tail_kernel(x - x0, spec);
    return std::max({std::abs(a.xx - b.xx), std::abs(a.xy - b.xy), std::abs(a.yy - b.yy)});
}

double pressure_pairing_by_parts(const TensorField& w, const VectorField& v, double R, Vec2 x0, double c) {
    const Grid& g = w.grid();
    const ScalarField p = pressure_spectral(w);
    const VectorField dphi = sample_weight_gradient(WeightFamily::cutoff(R, x0), g);
    double acc = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) acc += (p(i, j) - c) * (dphi.x(i, j) * v.x(i, j) + dphi.y(i, j) * v.y(i, j));
    }
    return -acc * g.cell_area();
}

EstimateReport lemma02_bound(const TensorField& w, const VectorField& v, double R, Vec2 x0, double p, double q) {
    if (!(p > 1.0 && q > 1.0) || std::isinf(p) || std::isinf(q) || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
        throw std::invalid_argument("lemma02_bound needs dual exponents 1 < p, q < inf with 1/p + 1/q = 1");
    }
    const Grid& g = w.grid();
    if (2.0 * R > 0.5 * g.length() * (1.0 + 1e-12)) {
        throw std::invalid_argument("lemma02_bound: cutoff support 2R exceeds half the box length");
    }
    const double div = divergence(v).max_abs();
    if (div > 1e-8 * std::max(1.0, v.max_abs())) {
        throw std::domain_error("lemma02_bound: v is not divergence free (grid-max div " + std::to_string(div) + ")");
    }

    const VectorField gp = grad_p_spectral(w);
    const ScalarField phi = sample_weight(WeightFamily::cutoff(R, x0), g);
    double pairing = 0.0;
    double vq = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
            const double f = phi(i, j);
            if (f == 0.0) continue;
            pairing += f * (gp.x(i, j) * v.x(i, j) + gp.y(i, j) * v.y(i, j));
            const double speed = std::hypot(v.x(i, j), v.y(i, j));
            vq += std::pow(f, 0.5 * q) * std::pow(speed, q);
        }
    }
    const double lhs = std::abs(pairing * g.cell_area());
    const double v_norm = std::pow(vq * g.cell_area(), 1.0 / q);
    const double w_int = weighted_ball_integral(w.magnitude(), p, R, WeightFamily::theta_scaled(R, x0), 1.0);

    const SplitSpec spec{R};
    const double p_x0 = tail_pressure_at(w, x0, spec);
    EstimateReport rep = EstimateReport::make("lemma02", lhs, w_int * v_norm);
    rep.params = {{"R", R},
                  {"x0_1", x0.x},
                  {"x0_2", x0.y},
                  {"p", p},
                  {"q", q},
                  {"p_x0", p_x0},
                  {"lhs_by_parts", std::abs(pressure_pairing_by_parts(w, v, R, x0, p_x0))}};
    return rep;
}

}  // namespace ulnse
