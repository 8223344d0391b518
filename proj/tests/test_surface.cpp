#include <gtest/gtest.h>

#include <optional>
#include <random>

#include <cubic_mw/enumerate.hpp>
#include <cubic_mw/linalg.hpp>
#include <cubic_mw/surface.hpp>

using namespace cubic_mw;

namespace {

const CubicSurface& Z() {
    static const CubicSurface s = CubicSurface::zagier();
    return s;
}

SurfacePoint P(std::initializer_list<long long> c) { return make_surface_point(Z(), c); }

std::vector<BigInt> V(std::initializer_list<long long> xs) { return {xs.begin(), xs.end()}; }

// Substitution oracle: sum i*x_i^3 with plain 128-bit integers.
bool on_zagier(const ProjPoint& p) {
    __int128 s = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto v = static_cast<long long>(p[i]);
        s += static_cast<__int128>(i + 1) * v * v * v;
    }
    return s == 0;
}

// All 3x3 minors of the 3x4 matrix (x, y, z) vanish.
bool collinear_minors(const ProjPoint& x, const ProjPoint& y, const ProjPoint& z) {
    for (std::size_t skip = 0; skip < 4; ++skip) {
        std::vector<BigInt> a, b, c;
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == skip) continue;
            a.push_back(x[i]);
            b.push_back(y[i]);
            c.push_back(z[i]);
        }
        if (linalg::det3(a, b, c) != 0) return false;
    }
    return true;
}

}  // namespace

TEST(CubicSurface, Validation) {
    EXPECT_THROW(CubicSurface::diagonal({1, 0, 3, 4}), Error);
    EXPECT_THROW(CubicSurface::diagonal({1, 2, 3}), Error);
    EXPECT_THROW(CubicSurface(CubicForm::diagonal({1, 1, 1})), Error);
    EXPECT_TRUE(Z().contains(normalize({1, 0, 1, -1})));
    EXPECT_THROW(P({1, 1, 1, 1}), Error);
}

TEST(SecantCompose, Examples) {
    const auto x = P({1, 0, 1, -1}), y = P({1, 1, -1, 0});
    const auto z = secant_compose(Z(), x, y);
    EXPECT_EQ(z.point.coords(), V({3, 1, 1, -2}));
    EXPECT_TRUE(on_zagier(z.point));
    EXPECT_TRUE(collinear_minors(x.point, y.point, z.point));
    EXPECT_EQ(z.height, 7);
    EXPECT_EQ(secant_compose(Z(), x, z).point.coords(), V({1, 1, -1, 0}));
    try {
        secant_compose(Z(), x, x);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EqualPoints);
    }
}

TEST(SecantCompose, LineOnSurface) {
    // x^3 + y^3 - z^3 - w^3 contains the line (s, t, s, t).
    const CubicSurface s = CubicSurface::diagonal({1, 1, -1, -1});
    const auto a = make_surface_point(s, {1, 0, 1, 0});
    const auto b = make_surface_point(s, {0, 1, 0, 1});
    try {
        secant_compose(s, a, b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LineOnSurface);
    }
}

TEST(SecantCompose, TangencyIsAnOrdinaryResult) {
    // (1,28,-19,-18) lies on the tangent section at (1,1,-1,0), so the secant
    // through them is tangent at (1,1,-1,0) and returns it.
    const auto y = P({1, 1, -1, 0}), x = P({1, 28, -19, -18});
    EXPECT_EQ(secant_compose(Z(), x, y).point, y.point);
}

TEST(TangentSection, Examples) {
    EXPECT_TRUE(on_tangent_section(Z(), P({1, 28, -19, -18}), P({1, 1, -1, 0})));
    EXPECT_FALSE(on_tangent_section(Z(), P({3, 1, 1, -2}), P({1, 0, 1, -1})));
    // Not symmetric: grad at (1,28,-19,-18) is (3, 6*784, 9*361, 12*324).
    const BigInt d = BigInt(3) * 1 + BigInt(6 * 784) * 1 + BigInt(9 * 361) * -1 + BigInt(12 * 324) * 0;
    EXPECT_EQ(on_tangent_section(Z(), P({1, 1, -1, 0}), P({1, 28, -19, -18})), d == 0);
    EXPECT_FALSE(on_tangent_section(Z(), P({1, 1, -1, 0}), P({1, 28, -19, -18})));
    EXPECT_THROW(on_tangent_section(Z(), P({1, 1, -1, 0}), P({1, 1, -1, 0})), Error);
}

TEST(Height, Examples) {
    EXPECT_EQ(height(normalize({1, 0, 1, -1})), 3);
    EXPECT_EQ(height(normalize({1, 28, -19, -18})), 66);
    EXPECT_EQ(height(normalize({15, -37, 5, 29})), 86);
}

TEST(Translate, RelationsPointwise) {
    const auto reg = enumerate_points({1, 2, 3, 4}, 120);
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> pick(1, reg.size());
    int involutions = 0, sextuples = 0;
    for (int t = 0; t < 3000; ++t) {
        const auto& x = reg.at(pick(rng));
        const auto& y = reg.at(pick(rng));
        const auto& z = reg.at(pick(rng));
        if (x.point == y.point) continue;
        std::optional<SurfacePoint> maybe;
        try {
            maybe = translate(Z(), x, y);
        } catch (const Error&) {
            continue;
        }
        const SurfacePoint xy = *maybe;
        EXPECT_TRUE(on_zagier(xy.point));
        EXPECT_TRUE(collinear_minors(x.point, y.point, xy.point));
        EXPECT_EQ(translate(Z(), y, x), xy);
        if (xy.point != x.point) {
            EXPECT_EQ(translate(Z(), x, xy).point, y.point);
            ++involutions;
        } else {
            EXPECT_THROW(translate(Z(), x, xy), Error);
        }
        try {
            auto step = [&](const SurfacePoint& v) { return translate(Z(), x, translate(Z(), xy, translate(Z(), y, v))); };
            EXPECT_EQ(step(step(z)).point, z.point);
            ++sextuples;
        } catch (const Error&) {
        }
    }
    EXPECT_GT(involutions, 1000);
    EXPECT_GT(sextuples, 1000);
}

TEST(TangentSection, AgreesWithPolarCoefficient) {
    const auto reg = enumerate_points({1, 2, 3, 4}, 120);
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<std::size_t> pick(1, reg.size());
    for (int t = 0; t < 1000; ++t) {
        const auto& x = reg.at(pick(rng));
        const auto& y = reg.at(pick(rng));
        if (x.point == y.point) continue;
        const bool polar = polar_coeffs(Z().form(), y.point, x.point)[1] == 0;
        EXPECT_EQ(on_tangent_section(Z(), x, y), polar);
    }
}
