#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <random>

#include <cubic_mw/linalg.hpp>
#include <cubic_mw/plane_cubic.hpp>
#include <cubic_mw/relations.hpp>

using namespace cubic_mw;

namespace {

using Rat = boost::multiprecision::cpp_rational;

// Affine Weierstrass arithmetic on y^2 = x^3 + 17; nullopt is the point at infinity.
struct Affine {
    Rat x, y;
    bool operator==(const Affine&) const = default;
};
using WPoint = std::optional<Affine>;

WPoint w_add(const WPoint& p, const WPoint& q) {
    if (!p) return q;
    if (!q) return p;
    Rat lambda;
    if (p->x == q->x) {
        if (p->y != q->y || p->y == 0) return std::nullopt;
        lambda = 3 * p->x * p->x / (2 * p->y);
    } else {
        lambda = (q->y - p->y) / (q->x - p->x);
    }
    const Rat x3 = lambda * lambda - p->x - q->x;
    return Affine{x3, lambda * (p->x - x3) - p->y};
}

WPoint to_affine(const ProjPoint& p) {
    if (p[2] == 0) return std::nullopt;
    return Affine{Rat(p[0]) / Rat(p[2]), Rat(p[1]) / Rat(p[2])};
}

// Same formulas modulo a prime, plain int64.
struct ModAffine {
    std::int64_t x, y;
    bool operator==(const ModAffine&) const = default;
};
using MPoint = std::optional<ModAffine>;

std::int64_t md(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

MPoint m_add(const MPoint& a, const MPoint& b, std::int64_t p) {
    if (!a) return b;
    if (!b) return a;
    std::int64_t lambda;
    if (a->x == b->x) {
        if (a->y != b->y || a->y == 0) return std::nullopt;
        lambda = md(3 * a->x * a->x % p * inverse_mod(md(2 * a->y, p), p), p);
    } else {
        lambda = md(md(b->y - a->y, p) * inverse_mod(md(b->x - a->x, p), p), p);
    }
    const std::int64_t x3 = md(lambda * lambda - a->x - b->x, p);
    return ModAffine{x3, md(lambda * md(a->x - x3, p) - a->y, p)};
}

MPoint to_mod_affine(const ProjPoint& q, std::int64_t p) {
    if (q[2] == 0) return std::nullopt;
    const auto zi = inverse_mod(static_cast<std::int64_t>(q[2]), p);
    return ModAffine{md(static_cast<std::int64_t>(q[0]) * zi, p), md(static_cast<std::int64_t>(q[1]) * zi, p)};
}

// x^3 + y^3 - 2 z^3 mod p, in plain integers.
bool on_fermat_mod(const ProjPoint& q, std::int64_t p) {
    auto c = [&](std::size_t i) { return static_cast<std::int64_t>(q[i]) % p; };
    return md(c(0) * c(0) % p * c(0) + c(1) * c(1) % p * c(1) - 2 * (c(2) * c(2) % p * c(2)), p) == 0;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

}  // namespace

TEST(CubicCompose, Example) {
    const PlaneCubic c(fermat2_form());
    EXPECT_EQ(cubic_compose(c, normalize({1, 1, 1}), normalize({1, -1, 0})), normalize({1, 1, 1}));
    // the tangent at (1:1:1) meets the curve again at (1:-1:0)
    EXPECT_EQ(tangent_compose(c, normalize({1, 1, 1})), normalize({1, -1, 0}));
}

TEST(CubicCompose, RandomSecantsOverFp) {
    const FieldTag f = FieldTag::prime_field(101);
    const PlaneCubic c(fermat2_form(), f);
    const auto pts = all_points(c);
    ASSERT_GT(pts.size(), 50u);
    for (const auto& q : pts) EXPECT_TRUE(on_fermat_mod(q, 101));
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 500) {
        const auto& x = pts[rng() % pts.size()];
        const auto& y = pts[rng() % pts.size()];
        if (x == y) continue;
        const ProjPoint z = cubic_compose(c, x, y);
        EXPECT_TRUE(on_fermat_mod(z, 101));
        EXPECT_EQ(reduce(linalg::det3(x.coords(), y.coords(), z.coords()), f), 0);
        if (z != x) EXPECT_EQ(cubic_compose(c, x, z), y);
        ++checked;
    }
}

TEST(AllPoints, MatchesBruteCount) {
    for (std::int64_t p : {5, 7, 11, 13}) {
        const FieldTag f = FieldTag::prime_field(p);
        std::size_t count = 0;
        // every nonzero vector, divided by the p - 1 scalings
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b)
                for (std::int64_t d = 0; d < p; ++d)
                    if ((a || b || d) && md(a * a * a + b * b * b - 2 * d * d * d, p) == 0) ++count;
        EXPECT_EQ(all_points(PlaneCubic(fermat2_form(), f)).size(), count / static_cast<std::size_t>(p - 1));
    }
    EXPECT_THROW(all_points(PlaneCubic(fermat2_form())), Error);
}

TEST(GroupLaw, MatchesWeierstrassOverQ) {
    const PlaneCubic c(mordell17_form());
    const auto pts = mordell17_rational_points();
    const ProjPoint& e = pts[0];
    for (const auto& x : pts) {
        ASSERT_TRUE(c.contains(x));
        for (const auto& y : pts) {
            const ProjPoint s = group_add(c, e, x, y);
            EXPECT_EQ(to_affine(s), w_add(to_affine(x), to_affine(y))) << format_point(x) << " + " << format_point(y);
        }
    }
}

TEST(GroupLaw, MatchesWeierstrassOverFp) {
    for (std::int64_t p : {101, 103}) {
        const FieldTag f = FieldTag::prime_field(p);
        const PlaneCubic c(mordell17_form(), f);
        const auto pts = all_points(c);
        const ProjPoint e = normalize({0, 1, 0}, f);
        std::mt19937_64 rng(p);
        for (int i = 0; i < 400; ++i) {
            const auto& x = pts[rng() % pts.size()];
            const auto& y = pts[rng() % pts.size()];
            EXPECT_EQ(to_mod_affine(group_add(c, e, x, y), p), m_add(to_mod_affine(x, p), to_mod_affine(y, p), p));
        }
        // Lagrange: #E . x = e
        for (int i = 0; i < 10; ++i) {
            const auto& x = pts[rng() % pts.size()];
            ProjPoint acc = e;
            for (std::size_t k = 0; k < pts.size(); ++k) acc = group_add(c, e, acc, x);
            EXPECT_EQ(acc, e);
        }
    }
}

TEST(GroupLaw, NonFlexIdentityFermat) {
    const FieldTag f = FieldTag::prime_field(101);
    const PlaneCubic c(fermat2_form(), f);
    auto pts = all_points(c);
    const ProjPoint e = normalize({1, 1, 1}, f);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const auto& x = pts[rng() % pts.size()];
        const auto& y = pts[rng() % pts.size()];
        const auto& z = pts[rng() % pts.size()];
        EXPECT_EQ(group_add(c, e, x, e), x);
        EXPECT_EQ(group_add(c, e, x, y), group_add(c, e, y, x));
        EXPECT_EQ(group_add(c, e, group_add(c, e, x, y), z), group_add(c, e, x, group_add(c, e, y, z)));
    }
}

TEST(PlaneCubic, Errors) {
    const PlaneCubic c(fermat2_form());
    EXPECT_EQ(code_of([&] { cubic_compose(c, normalize({1, 1, 1}), normalize({1, 0, 0})); }), ErrorCode::NotOnCurve);
    EXPECT_EQ(code_of([&] { cubic_compose(c, normalize({1, 1, 1}), normalize({1, 1, 1})); }), ErrorCode::EqualPoints);
    EXPECT_EQ(code_of([&] { cubic_compose(c, normalize({1, 1, 1, 1}), normalize({1, -1, 0})); }), ErrorCode::DimensionMismatch);

    // cuspidal y^2 z = x^3 is singular at (0:0:1)
    const PlaneCubic cusp(CubicForm(3, {{{3, 0, 0, 0}, 1}, {{0, 2, 1, 0}, -1}}));
    EXPECT_EQ(code_of([&] { tangent_compose(cusp, normalize({0, 0, 1})); }), ErrorCode::SingularPoint);
    EXPECT_EQ(code_of([&] { cubic_compose(cusp, normalize({0, 0, 1}), normalize({1, 1, 1})); }), ErrorCode::SingularPoint);

    // xyz contains the line x = 0
    const PlaneCubic triangle(CubicForm(3, {{{1, 1, 1, 0}, 1}}));
    EXPECT_EQ(code_of([&] { cubic_compose(triangle, normalize({0, 1, 1}), normalize({0, 1, 2})); }), ErrorCode::LineOnCurve);
    EXPECT_EQ(code_of([&] { tangent_compose(triangle, normalize({0, 1, 1})); }), ErrorCode::LineOnCurve);

    EXPECT_THROW(PlaneCubic(CubicForm::diagonal({1, 2, 3, 4})), Error);
}

TEST(RationalPoints, FoundPointsLieOnCurve) {
    const PlaneCubic c(mordell17_form());
    const auto found = rational_points_on_lines(c, mordell17_rational_points(), 300, 3);
    EXPECT_GE(found.size(), mordell17_rational_points().size());
    for (const auto& p : found) EXPECT_TRUE(c.contains(p));
}
