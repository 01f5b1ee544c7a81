#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace ulnse {

/// Point / displacement in the plane.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr bool operator==(Vec2, Vec2) = default;

    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
};

/// Uniform periodic n x n grid on the square [-L/2, L/2)^2.
///
/// Sample (i, j) sits at (x_i, y_j) with x_i = -L/2 + i h; storage is row-major
/// with i (the x1 index) as the slow index.
class Grid {
public:
    Grid(int n, double box_length);

    int n() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / n_; }
    double cell_area() const { return spacing() * spacing(); }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
    double coord(int k) const { return -0.5 * length_ + k * spacing(); }
    Vec2 point(int i, int j) const { return {coord(i), coord(j)}; }

    /// Signed Fourier mode number for storage index k in [0, n).
    int mode(int k) const { return k < n_ / 2 ? k : k - n_; }
    /// Physical wavenumber 2 pi m / L.
    double wavenumber(int m) const { return 2.0 * std::numbers::pi * m / length_; }
    double fundamental() const { return 2.0 * std::numbers::pi / length_; }

    /// Shortest periodic representative of a displacement.
    Vec2 min_image(Vec2 d) const;
    /// Nearest grid index (periodic) for a coordinate.
    int nearest_index(double coord) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int n_;
    double length_;
};

}  // namespace ulnse
