#ifndef CUBIC_MW_PLANE_CUBIC_HPP
#define CUBIC_MW_PLANE_CUBIC_HPP

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace cubic_mw {

/// A plane cubic curve over Q or F_p. May be singular; operations check
/// smoothness pointwise.
class PlaneCubic {
   public:
    PlaneCubic(CubicForm form, FieldTag field = FieldTag::rationals()) : form_(reduce_form(std::move(form), field)), field_(field) {
        if (form_.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "a plane cubic needs a form in 3 variables");
    }

    const CubicForm& form() const noexcept { return form_; }
    FieldTag field() const noexcept { return field_; }

    bool contains(const ProjPoint& x) const { return x.field() == field_ && eval(form_, x) == 0; }

    bool is_singular_at(const ProjPoint& x) const { return is_zero(gradient(form_, x), field_); }

   private:
    static CubicForm reduce_form(CubicForm f, FieldTag field) {
        if (field.is_rational()) return f;
        std::vector<CubicForm::Term> terms;
        for (const auto& t : f.terms()) terms.push_back({t.exponent, reduce(t.coeff, field)});
        return CubicForm(f.dim(), std::move(terms));
    }

    CubicForm form_;
    FieldTag field_;
};

namespace detail {

inline void require_smooth_point(const PlaneCubic& c, const ProjPoint& x) {
    if (x.size() != 3) throw Error(ErrorCode::DimensionMismatch, "plane cubic points live in P^2");
    if (!c.contains(x)) throw Error(ErrorCode::NotOnCurve, "(" + format_point(x) + ") is not on the curve");
    if (c.is_singular_at(x)) throw Error(ErrorCode::SingularPoint, "(" + format_point(x) + ") is a singular point");
}

}  // namespace detail

/// Third intersection of the secant xy with the curve.
inline ProjPoint cubic_compose(const PlaneCubic& c, const ProjPoint& x, const ProjPoint& y) {
    detail::require_smooth_point(c, x);
    detail::require_smooth_point(c, y);
    if (x == y) throw Error(ErrorCode::EqualPoints, "secant through a point and itself");
    const auto k = polar_coeffs(c.form(), x, y);
    if (k[1] == 0 && k[2] == 0) throw Error(ErrorCode::LineOnCurve, "the secant is a component of the curve");
    std::vector<BigInt> z(3);
    for (std::size_t i = 0; i < 3; ++i) z[i] = k[2] * x[i] - k[1] * y[i];
    return normalize(z, c.field());
}

/// Third intersection of the tangent line at a smooth point x (x itself at a flex).
inline ProjPoint tangent_compose(const PlaneCubic& c, const ProjPoint& x) {
    detail::require_smooth_point(c, x);
    const auto g = gradient(c.form(), x);
    // Any point of the tangent line other than x.
    std::vector<BigInt> dir;
    for (std::size_t i = 0; i < 3 && dir.empty(); ++i) {
        std::vector<BigInt> e(3, 0);
        e[i] = 1;
        const auto cand = cross(g, e);
        if (is_zero(cand, c.field())) continue;
        if (normalize(cand, c.field()) != x) dir.assign(cand.begin(), cand.end());
    }
    const ProjPoint y = normalize(dir, c.field());
    const auto k = polar_coeffs(c.form(), x, y);
    if (k[2] == 0 && k[3] == 0) throw Error(ErrorCode::LineOnCurve, "the tangent line is a component of the curve");
    std::vector<BigInt> z(3);
    for (std::size_t i = 0; i < 3; ++i) z[i] = k[3] * x[i] - k[2] * y[i];
    return normalize(z, c.field());
}

/// x + y := e o (x o y), using the tangent line whenever the two arguments
/// of o coincide.
inline ProjPoint group_add(const PlaneCubic& c, const ProjPoint& e, const ProjPoint& x, const ProjPoint& y) {
    const ProjPoint w = x == y ? tangent_compose(c, x) : cubic_compose(c, x, y);
    return w == e ? tangent_compose(c, e) : cubic_compose(c, e, w);
}

/// Every F_p-point of the curve, by exhaustive scan of P^2(F_p).
inline std::vector<ProjPoint> all_points(const PlaneCubic& c) {
    if (c.field().is_rational()) throw Error(ErrorCode::InvalidField, "exhaustive scan needs a finite field");
    const std::int64_t p = c.field().prime();
    std::vector<ProjPoint> out;
    auto consider = [&](std::int64_t a, std::int64_t b, std::int64_t d) {
        ProjPoint q = normalize({a, b, d}, c.field());
        if (c.contains(q)) out.push_back(std::move(q));
    };
    consider(0, 0, 1);
    for (std::int64_t d = 0; d < p; ++d) consider(0, 1, d);
    for (std::int64_t b = 0; b < p; ++b)
        for (std::int64_t d = 0; d < p; ++d) consider(1, b, d);
    return out;
}

/// Rational points found on random lines through known points: a line
/// through a curve point meets the curve in two further points, which are
/// rational when the residual quadratic has a square discriminant.
inline std::vector<ProjPoint> rational_points_on_lines(const PlaneCubic& c, const std::vector<ProjPoint>& known, int attempts,
                                                       std::uint64_t seed, int max_direction = 6) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-max_direction, max_direction);
    std::set<ProjPoint> found(known.begin(), known.end());
    for (int i = 0; i < attempts && !known.empty(); ++i) {
        const ProjPoint& x = known[rng() % known.size()];
        std::vector<BigInt> d{coord(rng), coord(rng), coord(rng)};
        if (is_zero(d, c.field()) || normalize(d) == x) continue;
        const ProjPoint y = normalize(d);
        const auto k = polar_coeffs(c.form(), x, y);  // k0 = 0
        std::vector<std::pair<BigInt, BigInt>> roots;  // t = num/den, point den*x + num*y
        if (k[3] == 0) {
            if (k[2] != 0) roots.push_back({-k[1], k[2]});
        } else {
            const BigInt disc = k[2] * k[2] - 4 * k[3] * k[1];
            if (disc < 0) continue;
            const BigInt s = boost::multiprecision::sqrt(disc);
            if (s * s != disc) continue;
            roots.push_back({-k[2] + s, 2 * k[3]});
            roots.push_back({-k[2] - s, 2 * k[3]});
        }
        for (const auto& [num, den] : roots) {
            std::vector<BigInt> z(3);
            for (std::size_t j = 0; j < 3; ++j) z[j] = den * x[j] + num * y[j];
            if (is_zero(z, c.field())) continue;
            found.insert(normalize(z));
        }
    }
    return {found.begin(), found.end()};
}

}  // namespace cubic_mw

#endif
