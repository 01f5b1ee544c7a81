#pragma once

#include <cstddef>
#include <functional>
#include <new>
#include <span>
#include <vector>

#include "ulnse/grid.hpp"

namespace ulnse {

namespace detail {
void* aligned_alloc_bytes(std::size_t bytes);
void aligned_free(void* p) noexcept;
}  // namespace detail

/// Allocator returning SIMD-aligned storage so buffers can be handed to the
/// FFT plans created on separately allocated scratch arrays.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    AlignedAllocator() = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
    T* allocate(std::size_t count) {
        return static_cast<T*>(detail::aligned_alloc_bytes(count * sizeof(T)));
    }
    void deallocate(T* p, std::size_t) noexcept { detail::aligned_free(p); }
    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;

/// Real samples of a scalar function on a Grid.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid);
    ScalarField(const Grid& grid, RealBuffer values);

    static ScalarField constant(const Grid& grid, double value);
    static ScalarField from_function(const Grid& grid, const std::function<double(Vec2)>& f);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    const double* data() const { return values_.data(); }
    double* data() { return values_.data(); }

    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }

    double mean() const;
    double min() const;
    double max() const;
    double max_abs() const;
    bool all_finite() const;
    /// Box integral by the midpoint (equivalently trapezoid, periodic) rule.
    double integral() const;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(const ScalarField& o);
    ScalarField& operator*=(double s);
    ScalarField& operator+=(double s);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

private:
    void check_same_grid(const ScalarField& o) const;

    Grid grid_;
    RealBuffer values_;
};

/// Two-component field (u1, u2) on a shared grid.
struct VectorField {
    ScalarField x;
    ScalarField y;

    VectorField(ScalarField x_component, ScalarField y_component);
    explicit VectorField(const Grid& grid) : x(grid), y(grid) {}

    static VectorField from_function(const Grid& grid, const std::function<Vec2(Vec2)>& f);
    static VectorField constant(const Grid& grid, Vec2 value);

    const Grid& grid() const { return x.grid(); }
    Vec2 at(int i, int j) const { return {x(i, j), y(i, j)}; }
    Vec2 mean() const { return {x.mean(), y.mean()}; }
    double max_abs() const;
    bool all_finite() const { return x.all_finite() && y.all_finite(); }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(double s, VectorField a) { return a *= s; }
};

/// Symmetric 2x2 tensor field; the off-diagonal entry is stored once.
struct TensorField {
    ScalarField xx;
    ScalarField xy;
    ScalarField yy;

    explicit TensorField(const Grid& grid) : xx(grid), xy(grid), yy(grid) {}
    TensorField(ScalarField w11, ScalarField w12, ScalarField w22);
    /// Symmetrizes: the stored off-diagonal is (w12 + w21) / 2.
    static TensorField symmetrized(ScalarField w11, const ScalarField& w12, const ScalarField& w21,
                                   ScalarField w22);
    /// w = u (x) u.
    static TensorField outer(const VectorField& u);

    const Grid& grid() const { return xx.grid(); }
    /// Pointwise Frobenius norm |w|.
    ScalarField magnitude() const;
};

/// Pointwise Euclidean length |u|.
ScalarField magnitude(const VectorField& u);
/// Pointwise |f|.
ScalarField abs(const ScalarField& f);

}  // namespace ulnse
