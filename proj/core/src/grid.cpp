#include "ulnse/grid.hpp"

#include <stdexcept>
#include <string>

namespace ulnse {

Grid::Grid(int n, double box_length) : n_(n), length_(box_length) {
    if (n < 8 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("grid size must be a power of two >= 8, got " + std::to_string(n));
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
        throw std::invalid_argument("box length must be positive and finite");
    }
}

Vec2 Grid::min_image(Vec2 d) const {
    d.x -= length_ * std::nearbyint(d.x / length_);
    d.y -= length_ * std::nearbyint(d.y / length_);
    return d;
}

int Grid::nearest_index(double coord) const {
    const long k = std::lround((coord + 0.5 * length_) / spacing());
    const long m = ((k % n_) + n_) % n_;
    return static_cast<int>(m);
}

}  // namespace ulnse
