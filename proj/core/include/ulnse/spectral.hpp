#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ulnse/fields.hpp"

namespace ulnse {

using Complex = std::complex<double>;
using ComplexBuffer = std::vector<Complex, AlignedAllocator<Complex>>;

/// Wavenumber data for one stored coefficient, passed to multiplier callbacks.
struct Wave {
    int m1 = 0;            ///< signed mode along x1
    int m2 = 0;            ///< signed mode along x2 (always >= 0 in storage)
    double k1 = 0.0;       ///< physical wavenumber along x1
    double k2 = 0.0;
    double k1_odd = 0.0;   ///< k1, but zero on the Nyquist row (odd-order symbols)
    double k2_odd = 0.0;
    double k_sq = 0.0;     ///< k1^2 + k2^2
    bool zero() const { return m1 == 0 && m2 == 0; }
};

/// Half-plane discrete Fourier coefficients of a real field.
///
/// Convention: forward transform is unnormalized, f^(m) = sum_x f(x) e^{-i k.(x - x_0)},
/// the inverse carries the 1/n^2. Storage is n x (n/2 + 1), conjugate symmetry
/// supplies the negative-m2 half.
class Spectrum {
public:
    explicit Spectrum(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int rows() const { return grid_.n(); }
    int cols() const { return grid_.n() / 2 + 1; }
    std::span<Complex> coefficients() { return coeffs_; }
    std::span<const Complex> coefficients() const { return coeffs_; }
    Complex* data() { return coeffs_.data(); }
    const Complex* data() const { return coeffs_.data(); }

    Complex& at(int row, int col) { return coeffs_[static_cast<std::size_t>(row) * cols() + col]; }
    Complex at(int row, int col) const { return coeffs_[static_cast<std::size_t>(row) * cols() + col]; }

    /// Coefficient for arbitrary signed modes |m1|, |m2| <= n/2.
    Complex coefficient(int m1, int m2) const;
    Wave wave(int row, int col) const;

    /// Multiplies every coefficient by symbol(wave).
    template <class Symbol>
    Spectrum& apply(Symbol&& symbol) {
        const int nr = rows();
        const int nc = cols();
        for (int r = 0; r < nr; ++r) {
            for (int c = 0; c < nc; ++c) at(r, c) *= symbol(wave(r, c));
        }
        return *this;
    }

    Spectrum& operator+=(const Spectrum& o);
    Spectrum& operator-=(const Spectrum& o);
    Spectrum& operator*=(Complex s);
    friend Spectrum operator+(Spectrum a, const Spectrum& b) { return a += b; }
    friend Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }

private:
    Grid grid_;
    ComplexBuffer coeffs_;
};

/// Forward transform; rejects non-finite samples.
Spectrum forward(const ScalarField& f);
/// Inverse transform (includes the 1/n^2 normalization).
ScalarField inverse(const Spectrum& s);

/// inverse(forward(f) * symbol).
template <class Symbol>
ScalarField filtered(const ScalarField& f, Symbol&& symbol) {
    Spectrum s = forward(f);
    s.apply(std::forward<Symbol>(symbol));
    return inverse(s);
}

/// Samples the trigonometric interpolant of f on the grid refined by an
/// integer factor (same box).
ScalarField upsample(const ScalarField& f, int factor);

/// Evaluates the trigonometric interpolant of f on the horizontal line x2 = y
/// at every grid abscissa x1_i.
std::vector<double> interpolate_on_row(const Spectrum& s, double y);
/// Evaluates the trigonometric interpolant at an arbitrary point.
double interpolate_at(const Spectrum& s, Vec2 x);

}  // namespace ulnse
