#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "ulnse/norms.hpp"
#include "ulnse/snapshot.hpp"

using namespace ulnse;
using namespace testsupport;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(6, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(12, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Grid(16, 0.0), std::invalid_argument);
    const Grid g(16, 2.0);
    CHECK(g.spacing() == doctest::Approx(0.125));
    CHECK(g.coord(0) == doctest::Approx(-1.0));
    CHECK(g.coord(8) == doctest::Approx(0.0));
}

TEST_CASE("constant field transforms to a single zero mode") {
    const Grid g(16, 2 * pi);
    const Spectrum s = forward(ScalarField::constant(g, 3.0));
    CHECK(s.at(0, 0).real() == doctest::Approx(3.0 * 256));
    double rest = 0.0;
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c)
            if (r != 0 || c != 0) rest = std::max(rest, std::abs(s.at(r, c)));
    CHECK(rest < 1e-12);
}

TEST_CASE("sine has exactly the modes (+-1, 0)") {
    const Grid g(32, 5.0);
    const ScalarField f = ScalarField::from_function(g, [](Vec2 x) { return std::sin(2 * pi * x.x / 5.0); });
    const Spectrum s = forward(f);
    for (int m1 = -15; m1 <= 15; ++m1) {
        for (int m2 = -15; m2 <= 15; ++m2) {
            const double a = std::abs(s.coefficient(m1, m2));
            if (m2 == 0 && std::abs(m1) == 1) {
                CHECK(a == doctest::Approx(32.0 * 32.0 / 2.0));
            } else {
                CHECK(a < 1e-10);
            }
        }
    }
}

TEST_CASE("roundtrip and Parseval on random fields") {
    const Grid g(64, 3.0);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const ScalarField f = random_field(g, seed);
        const Spectrum s = forward(f);
        const ScalarField back = inverse(s);
        CHECK(max_diff(f, back) <= 1e-12 * f.max_abs());

        double phys = 0.0;
        for (double v : f.values()) phys += v * v;
        double spec = 0.0;
        for (int r = 0; r < s.rows(); ++r) {
            for (int c = 0; c < s.cols(); ++c) {
                const double w = (c == 0 || c == g.n() / 2) ? 1.0 : 2.0;
                spec += w * std::norm(s.at(r, c));
            }
        }
        spec /= static_cast<double>(g.size());
        CHECK(std::abs(phys - spec) <= 1e-12 * phys);
    }
}

TEST_CASE("forward rejects non-finite samples") {
    const Grid g(8, 1.0);
    ScalarField f(g);
    f(2, 3) = std::nan("");
    CHECK_THROWS_AS(forward(f), std::domain_error);
}

TEST_CASE("Taylor-Green operator identities") {
    const Grid g(32, 2 * pi);
    const ScalarField theta = ScalarField::from_function(g, [](Vec2 x) { return std::sin(x.x) * std::sin(x.y); });
    const ScalarField lap = laplacian(theta);
    ScalarField expect = theta;
    expect *= -2.0;
    CHECK(max_diff(lap, expect) < 1e-12);
    CHECK(max_diff(inverse_laplacian(expect), theta) < 1e-12);

    const VectorField u = taylor_green(g);
    CHECK(divergence(u).max_abs() < 1e-12);
    ScalarField w = theta;
    w *= 2.0;
    CHECK(max_diff(curl(u), w) < 1e-12);
    CHECK(max_diff(biot_savart(w), u) < 1e-12);
    CHECK(max_diff(perp_gradient(theta), u) < 1e-12);
}

TEST_CASE("inverse Laplacian and Biot-Savart reject nonzero mean") {
    const Grid g(16, 2 * pi);
    const ScalarField c = ScalarField::constant(g, 0.5);
    CHECK_THROWS_AS(inverse_laplacian(c), std::domain_error);
    CHECK_THROWS_AS(biot_savart(c), std::domain_error);
    const VectorField zero = biot_savart(ScalarField(g));
    CHECK(zero.max_abs() == 0.0);
}

TEST_CASE("Biot-Savart roundtrip on random zero-mean vorticity") {
    const Grid g(64, 7.0);
    for (std::uint64_t seed = 10; seed < 13; ++seed) {
        ScalarField w = random_field(g, seed);
        w += -w.mean();
        const VectorField u = biot_savart(w);
        // The three pure Nyquist modes are invisible to first derivatives.
        const ScalarField w_visible = filtered(w, [](const Wave& k) {
            return (k.k1_odd == 0.0 && k.k2_odd == 0.0) ? 0.0 : 1.0;
        });
        CHECK(max_diff(curl(u), w_visible) <= 1e-10 * w.max_abs());
        CHECK(divergence(u).max_abs() <= 1e-10);
    }
}

TEST_CASE("dealiasing") {
    const Grid g(64, 2 * pi);
    const ScalarField low = random_smooth(g, 3, g.n() / 3);
    CHECK(max_diff(dealias(low), low) < 1e-13);
    const int m = g.n() / 2 - 1;
    const ScalarField high = ScalarField::from_function(g, [m](Vec2 x) { return std::cos(m * x.x); });
    CHECK(dealias(high).max_abs() < 1e-13);

    const ScalarField s = ScalarField::from_function(g, [](Vec2 x) { return std::sin(x.x); });
    const ScalarField sq = dealiased_product(s, s);
    const ScalarField expect = ScalarField::from_function(g, [](Vec2 x) { return 0.5 * (1.0 - std::cos(2 * x.x)); });
    CHECK(max_diff(sq, expect) < 1e-12);
}

TEST_CASE("ball norms") {
    const Grid g(128, 16.0);
    const ScalarField c = ScalarField::constant(g, -2.0);
    const double R = 3.0;
    const double l2 = ball_norm(c, 2.0, R, {0.3, -0.2});
    // Midpoint rule on a disk mask: O(h) relative error.
    CHECK(std::abs(l2 - 2.0 * std::sqrt(pi * R * R)) / l2 < 2.0 * g.spacing() / R);
    CHECK(ball_norm(c, kInfinity, R, {1.0, 1.0}) == 2.0);
    CHECK_THROWS_AS(ball_norm(c, 2.0, 8.5, {}), std::invalid_argument);

    const ScalarField gauss = ScalarField::from_function(g, [](Vec2 x) { return std::exp(-x.norm2()); });
    double prev = 0.0;
    for (double r = 0.25; r <= 8.0; r += 0.25) {
        const double v = ball_norm(gauss, 2.0, r, {0.1, 0.0});
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("ball norm at half the box converges to the inscribed-disk norm") {
    // f = cos(x1) on the disk of radius a = L/2 - h centered at 0; exact
    // integral of cos^2 over the disk is pi a^2/2 + pi a J1(2a)/2. Lattice
    // counting makes single doublings erratic, so the order is a least-squares
    // slope over five doublings.
    const double L = 8.0;
    std::vector<double> xs, ys;
    for (int n : {64, 128, 256, 512, 1024}) {
        const Grid g(n, L);
        const ScalarField f = ScalarField::from_function(g, [](Vec2 x) { return std::cos(x.x); });
        const double a = L / 2 - g.spacing();
        const double exact = std::sqrt(0.5 * pi * a * a + 0.5 * pi * a * std::cyl_bessel_j(1.0, 2.0 * a));
        xs.push_back(std::log2(g.spacing()));
        ys.push_back(std::log2(std::abs(ball_norm(f, 2.0, a, {}) - exact)));
    }
    const double mx = (xs[0] + xs[1] + xs[2] + xs[3] + xs[4]) / 5;
    const double my = (ys[0] + ys[1] + ys[2] + ys[3] + ys[4]) / 5;
    double sxy = 0.0, sxx = 0.0;
    for (int k = 0; k < 5; ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    CHECK(sxy / sxx >= 1.0);
}

TEST_CASE("snapshot roundtrip") {
    const Grid g(16, 3.5);
    const ScalarField f = random_field(g, 99);
    std::stringstream buf;
    write_snapshot(buf, f);
    const std::string bytes = buf.str();
    CHECK(bytes.substr(0, 6) == "ULNSE1");
    CHECK(bytes.size() == 6 + 4 + 8 + 16 * 16 * 8);
    std::stringstream in(bytes);
    const ScalarField back = read_snapshot(in);
    CHECK(back.grid() == g);
    CHECK(max_diff(back, f) == 0.0);
    std::stringstream bad("ULNSE2xxxxxxxx");
    CHECK_THROWS(read_snapshot(bad));
}

TEST_CASE("spectral interpolation reproduces trigonometric polynomials") {
    const Grid g(32, 2 * pi);
    auto fn = [](Vec2 x) { return std::sin(2 * x.x + x.y) + 0.5 * std::cos(3 * x.y) - 0.25 * std::cos(x.x); };
    const Spectrum s = forward(ScalarField::from_function(g, fn));
    for (Vec2 p : {Vec2{0.123, -1.7}, Vec2{2.9, 0.4}, Vec2{-3.0, 3.0}}) CHECK(interpolate_at(s, p) == doctest::Approx(fn(p)).epsilon(1e-12));
    const auto row = interpolate_on_row(s, 0.77);
    for (int i = 0; i < g.n(); i += 5) CHECK(row[i] == doctest::Approx(fn({g.coord(i), 0.77})).epsilon(1e-12));
}

TEST_CASE("spectral upsampling") {
    const Grid g(32, 2.0 * pi);
    const ScalarField f = random_field(g, 12);
    const ScalarField fine = upsample(f, 4);
    CHECK(fine.grid().n() == 128);
    CHECK_THROWS_AS(upsample(f, 3), std::invalid_argument);
    double err = 0.0;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) err = std::max(err, std::abs(fine(4 * i, 4 * j) - f(i, j)));
    CHECK(err <= 1e-12);
    const Spectrum s = forward(f);
    CHECK(fine(7, 40) == doctest::Approx(interpolate_at(s, fine.grid().point(7, 40))).epsilon(1e-10));

    const auto smooth = [](Vec2 x) { return std::sin(3.0 * x.x) * std::cos(x.y) + std::cos(2.0 * x.x - 5.0 * x.y); };
    const ScalarField up = upsample(ScalarField::from_function(g, smooth), 2);
    CHECK(max_diff(up, ScalarField::from_function(up.grid(), smooth)) <= 1e-12);
}
