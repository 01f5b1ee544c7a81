#include "ulnse/fields.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ulnse {

namespace detail {
void* aligned_alloc_bytes(std::size_t bytes) {
    void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
    if (p == nullptr) throw std::bad_alloc();
    return p;
}
void aligned_free(void* p) noexcept { fftw_free(p); }
}  // namespace detail

ScalarField::ScalarField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const Grid& grid, RealBuffer values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("ScalarField: value count does not match grid");
    }
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
    ScalarField f(grid);
    std::fill(f.values_.begin(), f.values_.end(), value);
    return f;
}

ScalarField ScalarField::from_function(const Grid& grid, const std::function<double(Vec2)>& f) {
    ScalarField out(grid);
    for (int i = 0; i < grid.n(); ++i) {
        for (int j = 0; j < grid.n(); ++j) out(i, j) = f(grid.point(i, j));
    }
    return out;
}

namespace {
// Compensated (Neumaier) sum: constant fields average back to their value.
double compensated_sum(std::span<const double> xs) {
    double s = 0.0;
    double c = 0.0;
    for (double v : xs) {
        const double t = s + v;
        c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    return s + c;
}
}  // namespace

double ScalarField::mean() const { return compensated_sum(values_) / static_cast<double>(values_.size()); }

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::integral() const {
    return compensated_sum(values_) * grid_.cell_area();
}

void ScalarField::check_same_grid(const ScalarField& o) const {
    if (!(grid_ == o.grid_)) throw std::invalid_argument("field grids differ");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    check_same_grid(o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    check_same_grid(o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
    check_same_grid(o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField& ScalarField::operator+=(double s) {
    for (double& v : values_) v += s;
    return *this;
}

VectorField::VectorField(ScalarField x_component, ScalarField y_component)
    : x(std::move(x_component)), y(std::move(y_component)) {
    if (!(x.grid() == y.grid())) throw std::invalid_argument("VectorField components on different grids");
}

VectorField VectorField::from_function(const Grid& grid, const std::function<Vec2(Vec2)>& f) {
    VectorField out(grid);
    for (int i = 0; i < grid.n(); ++i) {
        for (int j = 0; j < grid.n(); ++j) {
            const Vec2 v = f(grid.point(i, j));
            out.x(i, j) = v.x;
            out.y(i, j) = v.y;
        }
    }
    return out;
}

VectorField VectorField::constant(const Grid& grid, Vec2 value) {
    return {ScalarField::constant(grid, value.x), ScalarField::constant(grid, value.y)};
}

double VectorField::max_abs() const {
    double m = 0.0;
    const auto a = x.values();
    const auto b = y.values();
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::hypot(a[k], b[k]));
    return m;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    x += o.x;
    y += o.y;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    x -= o.x;
    y -= o.y;
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
}

TensorField::TensorField(ScalarField w11, ScalarField w12, ScalarField w22)
    : xx(std::move(w11)), xy(std::move(w12)), yy(std::move(w22)) {
    if (!(xx.grid() == xy.grid()) || !(xx.grid() == yy.grid())) {
        throw std::invalid_argument("TensorField components on different grids");
    }
}

TensorField TensorField::symmetrized(ScalarField w11, const ScalarField& w12, const ScalarField& w21,
                                     ScalarField w22) {
    ScalarField off = w12 + w21;
    off *= 0.5;
    return {std::move(w11), std::move(off), std::move(w22)};
}

TensorField TensorField::outer(const VectorField& u) {
    return {u.x * u.x, u.x * u.y, u.y * u.y};
}

ScalarField TensorField::magnitude() const {
    ScalarField out(grid());
    auto o = out.values();
    const auto a = xx.values();
    const auto b = xy.values();
    const auto c = yy.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = std::sqrt(a[k] * a[k] + 2.0 * b[k] * b[k] + c[k] * c[k]);
    return out;
}

ScalarField magnitude(const VectorField& u) {
    ScalarField out(u.grid());
    auto o = out.values();
    const auto a = u.x.values();
    const auto b = u.y.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = std::hypot(a[k], b[k]);
    return out;
}

ScalarField abs(const ScalarField& f) {
    ScalarField out = f;
    for (double& v : out.values()) v = std::abs(v);
    return out;
}

}  // namespace ulnse
