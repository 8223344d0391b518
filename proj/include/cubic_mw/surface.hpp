#ifndef CUBIC_MW_SURFACE_HPP
#define CUBIC_MW_SURFACE_HPP

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace cubic_mw {

/// A cubic surface F = 0 in P^3. Diagonal forms must have all four
/// coefficients nonzero, which makes them smooth.
class CubicSurface {
   public:
    explicit CubicSurface(CubicForm form, std::string label = {}) : form_(std::move(form)), label_(std::move(label)) {
        if (form_.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "a cubic surface needs a form in 4 variables");
        const bool pure_powers = std::all_of(form_.terms().begin(), form_.terms().end(), [](const auto& t) {
            return std::count(t.exponent.begin(), t.exponent.end(), std::uint8_t{3}) == 1;
        });
        if (pure_powers && !form_.is_diagonal()) {
            throw Error(ErrorCode::InvalidCoefficients, "diagonal surface with a vanishing coefficient is singular");
        }
        if (!pure_powers) {
            std::cerr << "warning: smoothness of non-diagonal surface '" << label_ << "' is not verified\n";
        }
        if (label_.empty()) label_ = form_.to_string();
    }

    static CubicSurface diagonal(std::span<const BigInt> coeffs) {
        if (coeffs.size() != 4) throw Error(ErrorCode::InvalidCoefficients, "expected four coefficients");
        for (const auto& a : coeffs)
            if (a == 0) throw Error(ErrorCode::InvalidCoefficients, "zero coefficient in diagonal surface");
        return CubicSurface(CubicForm::diagonal(coeffs), "diag(" + format_coords(coeffs, ",") + ")");
    }

    static CubicSurface diagonal(std::initializer_list<long long> coeffs) {
        std::vector<BigInt> v(coeffs.begin(), coeffs.end());
        return diagonal(std::span<const BigInt>(v));
    }

    /// x1^3 + 2 x2^3 + 3 x3^3 + 4 x4^3.
    static CubicSurface zagier() { return diagonal({1, 2, 3, 4}); }

    const CubicForm& form() const noexcept { return form_; }
    const std::string& label() const noexcept { return label_; }

    bool contains(const ProjPoint& x) const { return eval(form_, x) == 0; }

    friend bool operator==(const CubicSurface& a, const CubicSurface& b) { return a.form_ == b.form_; }

   private:
    CubicForm form_;
    std::string label_;
};

/// A rational point of a surface together with its height.
struct SurfacePoint {
    ProjPoint point;
    BigInt height;

    friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

inline SurfacePoint make_surface_point(const CubicSurface& s, ProjPoint p) {
    if (p.size() != 4) throw Error(ErrorCode::DimensionMismatch, "surface points live in P^3");
    if (!s.contains(p)) throw Error(ErrorCode::NotOnSurface, "(" + format_point(p) + ") is not on " + s.label());
    BigInt h = height(p);
    return {std::move(p), std::move(h)};
}

inline SurfacePoint make_surface_point(const CubicSurface& s, std::initializer_list<long long> raw) {
    return make_surface_point(s, normalize(raw));
}

/// Orders points by height, then lexicographically on canonical coordinates.
inline bool height_order(const SurfacePoint& a, const SurfacePoint& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.point < b.point;
}

/// Third intersection of the line xy with the surface: normalize(c2 x - c1 y)
/// where F(x + t y) = c1 t + c2 t^2 on the surface. The result equals x or y
/// when the line is tangent there.
inline ProjPoint compose_points(const CubicForm& form, const ProjPoint& x, const ProjPoint& y) {
    if (x == y) throw Error(ErrorCode::EqualPoints, "x o x is multivalued; use the tangent-section relation");
    const auto c = polar_coeffs(form, x, y);
    if (c[1] == 0 && c[2] == 0) {
        throw Error(ErrorCode::LineOnSurface, "line through (" + format_point(x) + ") and (" + format_point(y) + ") lies on the surface");
    }
    std::vector<BigInt> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = c[2] * x[i] - c[1] * y[i];
    return normalize(z, x.field());
}

inline SurfacePoint secant_compose(const CubicSurface& s, const SurfacePoint& x, const SurfacePoint& y) {
    ProjPoint z = compose_points(s.form(), x.point, y.point);
    BigInt h = height(z);
    return {std::move(z), std::move(h)};
}

/// t_x(y) := x o y.
inline SurfacePoint translate(const CubicSurface& s, const SurfacePoint& x, const SurfacePoint& y) {
    return secant_compose(s, x, y);
}

/// True iff x lies on the tangent plane section at y, i.e. x is one of the
/// values of y o y. Not symmetric in x and y.
inline bool on_tangent_section(const CubicSurface& s, const SurfacePoint& x, const SurfacePoint& y) {
    if (x.point == y.point) throw Error(ErrorCode::EqualPoints, "tangent-section relation needs distinct points");
    return reduce(dot(gradient(s.form(), y.point), x.point.coords()), x.point.field()) == 0;
}

}  // namespace cubic_mw

#endif
