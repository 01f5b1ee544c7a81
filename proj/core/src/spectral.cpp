#include "ulnse/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ulnse {

namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// Planning is not thread safe in FFTW; execution with the new-array interface is.
const PlanPair& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, PlanPair> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const std::size_t nreal = static_cast<std::size_t>(n) * n;
    const std::size_t ncplx = static_cast<std::size_t>(n) * (n / 2 + 1);
    double* real = fftw_alloc_real(nreal);
    fftw_complex* cplx = fftw_alloc_complex(ncplx);
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_2d(n, n, real, cplx, FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_2d(n, n, cplx, real, FFTW_ESTIMATE);
    fftw_free(real);
    fftw_free(cplx);
    if (p.r2c == nullptr || p.c2r == nullptr) throw std::runtime_error("FFTW planning failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

Spectrum::Spectrum(const Grid& grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.n()) * (grid.n() / 2 + 1), Complex{}) {}

Complex Spectrum::coefficient(int m1, int m2) const {
    const int n = grid_.n();
    if (std::abs(m1) > n / 2 || std::abs(m2) > n / 2) return {};
    auto row_of = [n](int m) { return ((m % n) + n) % n; };
    if (m2 >= 0) return at(row_of(m1), m2);
    return std::conj(at(row_of(-m1), -m2));
}

Wave Spectrum::wave(int row, int col) const {
    const int n = grid_.n();
    Wave w;
    w.m1 = grid_.mode(row);
    w.m2 = col;
    w.k1 = grid_.wavenumber(w.m1);
    w.k2 = grid_.wavenumber(w.m2);
    w.k1_odd = (row == n / 2) ? 0.0 : w.k1;
    w.k2_odd = (col == n / 2) ? 0.0 : w.k2;
    w.k_sq = w.k1 * w.k1 + w.k2 * w.k2;
    return w;
}

Spectrum& Spectrum::operator+=(const Spectrum& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("spectra on different grids");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& o) {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("spectra on different grids");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

Spectrum& Spectrum::operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

Spectrum forward(const ScalarField& f) {
    if (!f.all_finite()) throw std::domain_error("forward transform: field has non-finite values");
    const Grid& g = f.grid();
    Spectrum s(g);
    const PlanPair& p = plans_for(g.n());
    // r2c out of place preserves its input.
    fftw_execute_dft_r2c(p.r2c, const_cast<double*>(f.data()), reinterpret_cast<fftw_complex*>(s.data()));
    return s;
}

ScalarField inverse(const Spectrum& s) {
    const Grid& g = s.grid();
    ComplexBuffer scratch(s.coefficients().begin(), s.coefficients().end());
    ScalarField out(g);
    const PlanPair& p = plans_for(g.n());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
    out *= 1.0 / static_cast<double>(g.size());
    return out;
}

ScalarField upsample(const ScalarField& f, int factor) {
    if (factor < 1) throw std::invalid_argument("upsample factor must be positive");
    if (factor == 1) return f;
    const Grid& g = f.grid();
    const int n = g.n();
    const Grid fine(factor * n, g.length());
    const int N = fine.n();
    const Spectrum s = forward(f);
    Spectrum out(fine);
    const double scale = static_cast<double>(factor) * factor;
    for (int r = 0; r < n; ++r) {
        const int m1 = g.mode(r);
        for (int c = 0; c <= n / 2; ++c) {
            Complex v = scale * s.at(r, c);
            // Nyquist content is shared between +n/2 and -n/2, as in interpolate_at.
            if (c == n / 2) v *= 0.5;
            if (r == n / 2) {
                out.at(n / 2, c) += 0.5 * v;
                out.at(N - n / 2, c) += 0.5 * v;
            } else {
                out.at(m1 < 0 ? m1 + N : m1, c) += v;
            }
        }
    }
    return inverse(out);
}

std::vector<double> interpolate_on_row(const Spectrum& s, double y) {
    const Grid& g = s.grid();
    const int n = g.n();
    const double y_rel = y - g.coord(0);
    // Collapse the x2 sum at the requested ordinate: one complex value per x1 mode.
    std::vector<Complex> collapsed(n);
    for (int r = 0; r < n; ++r) {
        Complex acc{};
        for (int c = 0; c <= n / 2; ++c) {
            const double weight = (c == 0 || c == n / 2) ? 1.0 : 2.0;
            const double phase = g.wavenumber(c) * y_rel;
            acc += weight * s.at(r, c) * Complex(std::cos(phase), std::sin(phase));
        }
        collapsed[r] = acc;
    }
    std::vector<double> out(n, 0.0);
    const double norm = 1.0 / static_cast<double>(g.size());
    for (int i = 0; i < n; ++i) {
        Complex acc{};
        for (int r = 0; r < n; ++r) {
            // Grid abscissae make the x1 phase an exact root of unity.
            const double phase = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(r) * i) % n) / n;
            acc += collapsed[r] * Complex(std::cos(phase), std::sin(phase));
        }
        out[i] = acc.real() * norm;
    }
    return out;
}

double interpolate_at(const Spectrum& s, Vec2 x) {
    const Grid& g = s.grid();
    const int n = g.n();
    const double x_rel = x.x - g.coord(0);
    const double y_rel = x.y - g.coord(0);
    Complex acc{};
    for (int r = 0; r < n; ++r) {
        const int m1 = g.mode(r);
        for (int c = 0; c <= n / 2; ++c) {
            const double weight = (c == 0 || c == n / 2) ? 1.0 : 2.0;
            const double phase_y = g.wavenumber(c) * y_rel;
            const Complex term = weight * s.at(r, c) * Complex(std::cos(phase_y), std::sin(phase_y));
            // The Nyquist row is split evenly between +n/2 and -n/2 to keep the interpolant real.
            if (r == n / 2) {
                acc += term * std::cos(g.wavenumber(m1) * x_rel);
            } else {
                const double phase_x = g.wavenumber(m1) * x_rel;
                acc += term * Complex(std::cos(phase_x), std::sin(phase_x));
            }
        }
    }
    return acc.real() / static_cast<double>(g.size());
}

}  // namespace ulnse
