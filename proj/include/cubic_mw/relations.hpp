#ifndef CUBIC_MW_RELATIONS_HPP
#define CUBIC_MW_RELATIONS_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "linalg.hpp"
#include "plane_cubic.hpp"

namespace cubic_mw {

/// Outcome of one randomized property suite. `checked` counts configurations
/// where the property was actually tested; `skipped` counts draws rejected
/// because some composition was undefined.
struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_samples{};  // first few, with coordinates

    bool passed() const { return failures == 0 && checked > 0; }
    double skip_rate() const {
        const auto total = checked + skipped;
        return total == 0 ? 0.0 : static_cast<double>(skipped) / static_cast<double>(total);
    }
    void fail(std::string what) {
        ++failures;
        if (failure_samples.size() < 5) failure_samples.push_back(std::move(what));
    }
};

struct RelationsConfig {
    std::uint64_t seed = 0;
    std::size_t surface_configs = 10'000;  // defined configurations per surface suite
    std::size_t group_configs = 100;       // per group-law suite over F_p
    std::size_t rational_group_configs = 20;
    std::int64_t prime = 101;
};

namespace detail {

// Runs `trial` until `target` configurations are checked or the attempt
// budget is exhausted. trial returns false for a skip.
inline void drive(SuiteResult& r, std::size_t target, const std::function<bool(SuiteResult&)>& trial) {
    const std::size_t budget = 20 * target + 100;
    for (std::size_t attempt = 0; attempt < budget && r.checked < target; ++attempt) {
        if (trial(r)) {
            ++r.checked;
        } else {
            ++r.skipped;
        }
    }
}

inline std::string pts(std::initializer_list<const ProjPoint*> ps) {
    std::string s;
    for (const auto* p : ps) s += (s.empty() ? "(" : " (") + format_point(*p) + ")";
    return s;
}

inline bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
    return linalg::rank({a.coords(), b.coords(), c.coords()}, a.size(), a.field()) <= 2;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Surface suites over a registry
// ---------------------------------------------------------------------------

/// x o (x o y) = y when x o y != x, and EqualPoints exactly when x o y = x.
inline SuiteResult involution_suite(const PointRegistry& reg, std::size_t target, std::mt19937_64& rng) {
    SuiteResult r{"involution"};
    if (reg.size() < 2) return r;
    const auto& form = reg.surface().form();
    std::uniform_int_distribution<std::size_t> pick(1, reg.size());
    detail::drive(r, target, [&](SuiteResult& res) {
        const auto& x = reg.at(pick(rng)).point;
        const auto& y = reg.at(pick(rng)).point;
        if (x == y) return false;
        std::optional<ProjPoint> z;
        try {
            z = compose_points(form, x, y);
        } catch (const Error&) {
            return false;
        }
        if (*z == x) {
            try {
                compose_points(form, x, *z);
                res.fail("x o x accepted at tangency " + detail::pts({&x, &y}));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::EqualPoints) res.fail("wrong error at tangency " + detail::pts({&x, &y}));
            }
            return true;
        }
        try {
            if (compose_points(form, x, *z) != y) res.fail("x o (x o y) != y for " + detail::pts({&x, &y}));
        } catch (const Error& e) {
            res.fail("recomposition raised " + std::string(error_name(e.code())) + " for " + detail::pts({&x, &y}));
        }
        return true;
    });
    return r;
}

/// (t_x t_{x o y} t_y)^2 z = z, skipping draws where any step is undefined.
inline SuiteResult triple_translation_suite(const PointRegistry& reg, std::size_t target, std::mt19937_64& rng) {
    SuiteResult r{"triple-translation-squared"};
    if (reg.size() < 3) return r;
    const auto& form = reg.surface().form();
    std::uniform_int_distribution<std::size_t> pick(1, reg.size());
    detail::drive(r, target, [&](SuiteResult& res) {
        const auto& x = reg.at(pick(rng)).point;
        const auto& y = reg.at(pick(rng)).point;
        const auto& z = reg.at(pick(rng)).point;
        try {
            const ProjPoint w = compose_points(form, x, y);
            auto step = [&](const ProjPoint& v) {
                return compose_points(form, x, compose_points(form, w, compose_points(form, y, v)));
            };
            const ProjPoint back = step(step(z));
            if (back != z) res.fail("(t_x t_w t_y)^2 moved " + detail::pts({&x, &y, &z}));
        } catch (const Error&) {
            return false;
        }
        return true;
    });
    return r;
}

/// on_tangent_section(x, y) agrees with the vanishing of the linear polar
/// coefficient of F(y + t x).
inline SuiteResult tangent_consistency_suite(const PointRegistry& reg, std::size_t target, std::mt19937_64& rng) {
    SuiteResult r{"tangent-consistency"};
    if (reg.size() < 2) return r;
    std::uniform_int_distribution<std::size_t> pick(1, reg.size());
    detail::drive(r, target, [&](SuiteResult& res) {
        const auto& x = reg.at(pick(rng));
        const auto& y = reg.at(pick(rng));
        if (x.point == y.point) return false;
        const bool rel = on_tangent_section(reg.surface(), x, y);
        const bool polar = polar_coeffs(reg.surface().form(), y.point, x.point)[1] == 0;
        if (rel != polar) res.fail("tangent formulations disagree " + detail::pts({&x.point, &y.point}));
        return true;
    });
    return r;
}

/// x o y lies on the surface, on the line xy, and equals y o x.
inline SuiteResult closure_suite(const PointRegistry& reg, std::size_t target, std::mt19937_64& rng) {
    SuiteResult r{"closure-collinearity-symmetry"};
    if (reg.size() < 2) return r;
    const auto& form = reg.surface().form();
    std::uniform_int_distribution<std::size_t> pick(1, reg.size());
    detail::drive(r, target, [&](SuiteResult& res) {
        const auto& x = reg.at(pick(rng)).point;
        const auto& y = reg.at(pick(rng)).point;
        if (x == y) return false;
        try {
            const ProjPoint z = compose_points(form, x, y);
            if (eval(form, z) != 0) res.fail("off surface " + detail::pts({&x, &y}));
            if (!detail::collinear(x, y, z)) res.fail("not collinear " + detail::pts({&x, &y}));
            if (compose_points(form, y, x) != z) res.fail("asymmetric " + detail::pts({&x, &y}));
        } catch (const Error&) {
            return false;
        }
        return true;
    });
    return r;
}

inline std::vector<SuiteResult> surface_suites(const PointRegistry& reg, const RelationsConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<SuiteResult> out;
    out.push_back(involution_suite(reg, cfg.surface_configs, rng));
    out.push_back(triple_translation_suite(reg, cfg.surface_configs, rng));
    out.push_back(tangent_consistency_suite(reg, cfg.surface_configs, rng));
    out.push_back(closure_suite(reg, cfg.surface_configs, rng));
    return out;
}

// ---------------------------------------------------------------------------
// Plane cubic suites
// ---------------------------------------------------------------------------

/// On-curve, collinear, symmetric and involutive secant composition.
inline SuiteResult cubic_compose_suite(const PlaneCubic& c, const std::vector<ProjPoint>& points, std::size_t target,
                                       std::mt19937_64& rng, std::string name) {
    SuiteResult r{std::move(name)};
    if (points.size() < 2) return r;
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    detail::drive(r, target, [&](SuiteResult& res) {
        const auto& x = points[pick(rng)];
        const auto& y = points[pick(rng)];
        try {
            const ProjPoint z = cubic_compose(c, x, y);
            if (!c.contains(z)) res.fail("off curve " + detail::pts({&x, &y}));
            if (!detail::collinear(x, y, z)) res.fail("not collinear " + detail::pts({&x, &y}));
            if (cubic_compose(c, y, x) != z) res.fail("asymmetric " + detail::pts({&x, &y}));
            if (z != x && cubic_compose(c, x, z) != y) res.fail("not involutive " + detail::pts({&x, &y}));
        } catch (const Error&) {
            return false;
        }
        return true;
    });
    return r;
}

/// Identity, commutativity and associativity of x + y := e o (x o y).
inline std::vector<SuiteResult> group_law_suites(const PlaneCubic& c, const std::vector<ProjPoint>& points, std::size_t target,
                                                 std::mt19937_64& rng, const std::string& tag) {
    SuiteResult id{"group-identity " + tag}, comm{"group-commutativity " + tag}, assoc{"group-associativity " + tag};
    if (points.size() < 2) return {id, comm, assoc};
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    const ProjPoint& e = points[0];
    auto add = [&](const ProjPoint& a, const ProjPoint& b) { return group_add(c, e, a, b); };
    detail::drive(id, target, [&](SuiteResult& res) {
        const auto& x = points[pick(rng)];
        try {
            if (add(x, e) != x || add(e, x) != x) res.fail("identity " + detail::pts({&e, &x}));
        } catch (const Error&) {
            return false;
        }
        return true;
    });
    detail::drive(comm, target, [&](SuiteResult& res) {
        const auto& x = points[pick(rng)];
        const auto& y = points[pick(rng)];
        try {
            if (add(x, y) != add(y, x)) res.fail("commutativity " + detail::pts({&x, &y}));
        } catch (const Error&) {
            return false;
        }
        return true;
    });
    detail::drive(assoc, target, [&](SuiteResult& res) {
        const auto& x = points[pick(rng)];
        const auto& y = points[pick(rng)];
        const auto& z = points[pick(rng)];
        try {
            if (add(add(x, y), z) != add(x, add(y, z))) res.fail("associativity " + detail::pts({&x, &y, &z}));
        } catch (const Error&) {
            return false;
        }
        return true;
    });
    return {id, comm, assoc};
}

/// y^2 z = x^3 + 17 z^3 as a form in (x, y, z).
inline CubicForm mordell17_form() {
    return CubicForm(3, {{{3, 0, 0, 0}, 1}, {{0, 0, 3, 0}, 17}, {{0, 2, 1, 0}, -1}});
}

/// x^3 + y^3 - 2 z^3.
inline CubicForm fermat2_form() { return CubicForm::diagonal({1, 1, -2}); }

/// Small rational points of y^2 = x^3 + 17, the identity (0:1:0) first.
inline std::vector<ProjPoint> mordell17_rational_points() {
    return {normalize({0, 1, 0}), normalize({-2, 3, 1}), normalize({-1, 4, 1}), normalize({2, 5, 1}),
            normalize({4, 9, 1}),  normalize({8, 23, 1}), normalize({-2, -3, 1}), normalize({-1, -4, 1}),
            normalize({2, -5, 1}), normalize({4, -9, 1}), normalize({8, -23, 1}), normalize({43, 282, 1}),
            normalize({52, 375, 1})};
}

inline std::vector<SuiteResult> plane_cubic_suites(const RelationsConfig& cfg) {
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<SuiteResult> out;
    const FieldTag fp = FieldTag::prime_field(cfg.prime);
    const std::string ptag = "fp:" + std::to_string(cfg.prime);

    const PlaneCubic fermat(fermat2_form(), fp);
    auto fermat_pts = all_points(fermat);
    out.push_back(cubic_compose_suite(fermat, fermat_pts, 500, rng, "cubic-compose x^3+y^3-2z^3 " + ptag));
    for (auto& s : group_law_suites(fermat, fermat_pts, cfg.group_configs, rng, "x^3+y^3-2z^3 " + ptag)) out.push_back(std::move(s));

    const PlaneCubic mordell(mordell17_form(), fp);
    auto mordell_pts = all_points(mordell);
    // identity at the flex (0:1:0)
    std::stable_partition(mordell_pts.begin(), mordell_pts.end(), [&](const ProjPoint& p) { return p == normalize({0, 1, 0}, fp); });
    out.push_back(cubic_compose_suite(mordell, mordell_pts, 500, rng, "cubic-compose y^2z=x^3+17z^3 " + ptag));
    for (auto& s : group_law_suites(mordell, mordell_pts, cfg.group_configs, rng, "y^2z=x^3+17z^3 " + ptag)) out.push_back(std::move(s));

    const PlaneCubic mordell_q(mordell17_form());
    const auto q_pts = mordell17_rational_points();
    out.push_back(cubic_compose_suite(mordell_q, q_pts, 200, rng, "cubic-compose y^2z=x^3+17z^3 q"));
    for (auto& s : group_law_suites(mordell_q, q_pts, cfg.rational_group_configs, rng, "y^2z=x^3+17z^3 q")) out.push_back(std::move(s));
    return out;
}

}  // namespace cubic_mw

#endif
