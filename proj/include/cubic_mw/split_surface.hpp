#ifndef CUBIC_MW_SPLIT_SURFACE_HPP
#define CUBIC_MW_SPLIT_SURFACE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "parallel.hpp"
#include "plane_cubic.hpp"

namespace cubic_mw {

// ---------------------------------------------------------------------------
// Six points in general position and the cubics through them
// ---------------------------------------------------------------------------

struct GeneralPositionReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Pairwise distinct, no three collinear, not all six on a conic.
inline GeneralPositionReport check_general_position(std::span<const ProjPoint> pts) {
    GeneralPositionReport rep;
    auto fail = [&](std::string why) {
        rep.ok = false;
        rep.violations.push_back(std::move(why));
    };
    if (pts.size() != 6) fail("expected six points, got " + std::to_string(pts.size()));
    if (pts.empty()) return rep;
    const FieldTag f = pts[0].field();
    for (const auto& p : pts) {
        if (p.size() != 3) throw Error(ErrorCode::DimensionMismatch, "base points live in P^2");
        if (p.field() != f) throw Error(ErrorCode::InvalidField, "base points over different fields");
    }
    auto name = [&](std::size_t i) { return "(" + format_point(pts[i]) + ")"; };
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) fail("coincident points " + name(i) + " " + name(j));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (reduce(linalg::det3(pts[i].coords(), pts[j].coords(), pts[k].coords()), f) == 0) {
                    fail("collinear " + name(i) + " " + name(j) + " " + name(k));
                }
    if (pts.size() == 6) {
        linalg::Matrix conic;
        for (const auto& p : pts) {
            const auto& x = p.coords();
            conic.push_back({x[0] * x[0], x[0] * x[1], x[0] * x[2], x[1] * x[1], x[1] * x[2], x[2] * x[2]});
        }
        if (linalg::rank(conic, 6, f) < 6) fail("all six points lie on a conic");
    }
    return rep;
}

/// Canonical basis of the cubics through six points: the RREF kernel basis
/// of the 6x10 evaluation matrix on cubic_monomials(3).
inline std::array<CubicForm, 4> cubic_system_basis(std::span<const ProjPoint> pts) {
    if (!check_general_position(pts).ok) throw Error(ErrorCode::DegeneratePosition, "base points not in general position");
    const FieldTag f = pts[0].field();
    const auto mons = cubic_monomials(3);
    linalg::Matrix m;
    for (const auto& p : pts) {
        std::vector<BigInt> row;
        for (const auto& e : mons) row.push_back(monomial_value(e, p.coords()));
        m.push_back(std::move(row));
    }
    const auto ker = linalg::kernel(m, mons.size(), f);
    if (ker.size() != 4) throw Error(ErrorCode::DegeneratePosition, "cubic system has dimension " + std::to_string(ker.size()));
    return {CubicForm::from_monomial_coeffs(3, ker[0]), CubicForm::from_monomial_coeffs(3, ker[1]),
            CubicForm::from_monomial_coeffs(3, ker[2]), CubicForm::from_monomial_coeffs(3, ker[3])};
}

/// Projective points of P^{dim-1} in order of increasing max |coordinate|
/// (over F_p: all points, in a fixed order). Used for deterministic sampling.
inline std::vector<ProjPoint> small_points(std::size_t dim, FieldTag f, std::size_t limit) {
    std::vector<ProjPoint> out;
    std::set<ProjPoint> seen;
    const std::int64_t max_r = f.is_rational() ? 1000 : (f.prime() - 1) / 2 + 1;
    for (std::int64_t r = 1; r <= max_r && out.size() < limit; ++r) {
        std::vector<std::int64_t> v(dim, -r);
        while (true) {
            const bool on_shell = std::any_of(v.begin(), v.end(), [r](std::int64_t c) { return c == r || c == -r; });
            if (on_shell) {
                std::vector<BigInt> raw(v.begin(), v.end());
                if (!is_zero(raw, f)) {
                    ProjPoint p = normalize(raw, f);
                    if (seen.insert(p).second) {
                        out.push_back(std::move(p));
                        if (out.size() >= limit) break;
                    }
                }
            }
            std::size_t i = 0;
            while (i < dim && v[i] == r) v[i++] = -r;
            if (i == dim) break;
            ++v[i];
        }
    }
    // zero-including vectors of the r = 0 shell are covered by larger r
    return out;
}

// ---------------------------------------------------------------------------
// The blow-up model V -> P^2
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<BigInt> embed_raw(const std::array<CubicForm, 4>& cubics, FieldTag f, const ProjPoint& q) {
    std::vector<BigInt> v;
    for (const auto& c : cubics) v.push_back(reduce(c.evaluate_raw(q.coords()), f));
    return v;
}

inline std::vector<BigInt> cubic_monomial_row(std::span<const BigInt> x) {
    std::vector<BigInt> row;
    for (const auto& e : cubic_monomials(x.size())) row.push_back(monomial_value(e, x));
    return row;
}

inline CubicForm canonical_surface_form(std::vector<BigInt> coeffs, FieldTag f) {
    // Same canonical sign/scale rule as points: first nonzero positive (Q) or 1 (F_p).
    const auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](const BigInt& c) { return c != 0; });
    if (lead == coeffs.end()) throw Error(ErrorCode::EmptyKernel, "zero surface equation");
    if (f.is_rational()) {
        BigInt g = 0;
        for (const auto& c : coeffs) g = boost::multiprecision::gcd(g, c);
        if (*lead < 0) g = -g;
        for (auto& c : coeffs) c /= g;
    } else {
        const BigInt inv = inverse_mod(static_cast<std::int64_t>(*lead), f.prime());
        for (auto& c : coeffs) c = reduce(c * inv, f);
    }
    return CubicForm::from_monomial_coeffs(4, coeffs);
}

/// Kernel of the 20-column monomial matrix on the embedded samples.
inline CubicForm surface_through_samples(const std::array<CubicForm, 4>& cubics, FieldTag f, std::span<const ProjPoint> base,
                                         const std::vector<ProjPoint>& plane_samples) {
    linalg::Matrix m;
    for (const auto& q : plane_samples) {
        if (std::find(base.begin(), base.end(), q) != base.end()) continue;
        m.push_back(cubic_monomial_row(normalize(embed_raw(cubics, f, q), f).coords()));
    }
    const auto ker = linalg::kernel(m, 20, f);
    if (ker.empty()) throw Error(ErrorCode::EmptyKernel, "no cubic vanishes on the sampled image");
    if (ker.size() > 1) throw Error(ErrorCode::AmbiguousKernel, "kernel dimension " + std::to_string(ker.size()));
    return canonical_surface_form(ker[0], f);
}

/// Grows the deterministic sample set until the kernel is one-dimensional.
inline CubicForm surface_equation(const std::array<CubicForm, 4>& cubics, FieldTag f, std::span<const ProjPoint> base) {
    for (std::size_t n = 60; n <= 480; n *= 2) {
        try {
            return surface_through_samples(cubics, f, base, small_points(3, f, n));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::AmbiguousKernel) throw;
        }
    }
    throw Error(ErrorCode::AmbiguousKernel, "sampling never isolated a single cubic");
}

}  // namespace detail

/// P^2 blown up at six points, embedded in P^3 by the cubics through them.
class BlowupModel {
   public:
    BlowupModel(FieldTag field, std::array<ProjPoint, 6> base)
        : field_(field), base_(checked(field, std::move(base))), cubics_(cubic_system_basis(base_)),
          surface_(detail::surface_equation(cubics_, field_, base_)) {}

    FieldTag field() const noexcept { return field_; }
    const std::array<ProjPoint, 6>& base() const noexcept { return base_; }
    const std::array<CubicForm, 4>& cubics() const noexcept { return cubics_; }
    const CubicForm& surface() const noexcept { return surface_; }

    bool is_base_point(const ProjPoint& q) const { return std::find(base_.begin(), base_.end(), q) != base_.end(); }

   private:
    static std::array<ProjPoint, 6> checked(FieldTag f, std::array<ProjPoint, 6> base) {
        for (const auto& b : base)
            if (b.field() != f) throw Error(ErrorCode::InvalidField, "base point over a different field");
        return base;
    }

    FieldTag field_;
    std::array<ProjPoint, 6> base_;
    std::array<CubicForm, 4> cubics_;
    CubicForm surface_;
};

/// (1:0:0), (0:1:0), (0:0:1), (1:1:1), (1:2:3), (1:4:9).
inline std::array<ProjPoint, 6> default_base(FieldTag f) {
    return {normalize({1, 0, 0}, f), normalize({0, 1, 0}, f), normalize({0, 0, 1}, f),
            normalize({1, 1, 1}, f), normalize({1, 2, 3}, f), normalize({1, 4, 9}, f)};
}

inline ProjPoint embed(const BlowupModel& model, const ProjPoint& q) {
    if (q.size() != 3) throw Error(ErrorCode::DimensionMismatch, "embed takes a point of P^2");
    const auto v = detail::embed_raw(model.cubics(), model.field(), q);
    if (is_zero(v, model.field())) throw Error(ErrorCode::BasePoint, "(" + format_point(q) + ") is a base point");
    return normalize(v, model.field());
}

/// Recomputes the surface equation from an explicit list of plane samples.
/// Throws AmbiguousKernel when the samples do not pin down one cubic.
inline CubicForm recover_cubic_equation_from(const BlowupModel& model, const std::vector<ProjPoint>& plane_samples) {
    return detail::surface_through_samples(model.cubics(), model.field(), model.base(), plane_samples);
}

/// The quaternary cubic vanishing on the image of the model, from the
/// deterministic sample sequence.
inline CubicForm recover_cubic_equation(const BlowupModel& model) {
    return detail::surface_equation(model.cubics(), model.field(), model.base());
}

// ---------------------------------------------------------------------------
// Points of U(k) via their plane preimages
// ---------------------------------------------------------------------------

/// A point of U(k), stored as its preimage in P^2 (never a base point).
class PlaneRep {
   public:
    PlaneRep(const BlowupModel& model, ProjPoint q) : q_(std::move(q)) {
        if (q_.size() != 3) throw Error(ErrorCode::DimensionMismatch, "plane representatives live in P^2");
        if (q_.field() != model.field()) throw Error(ErrorCode::InvalidField, "point over a different field");
        if (model.is_base_point(q_)) throw Error(ErrorCode::BasePoint, "(" + format_point(q_) + ") is a base point");
    }

    const ProjPoint& point() const noexcept { return q_; }

    friend bool operator==(const PlaneRep&, const PlaneRep&) = default;
    friend bool operator<(const PlaneRep& a, const PlaneRep& b) { return a.q_ < b.q_; }

   private:
    ProjPoint q_;
};

/// *(a,b;c,d) = Γ(a,b) ∩ Γ(c,d), computed as l(a,b) ∩ l(c,d) in P^2.
inline PlaneRep quaternary_star(const BlowupModel& model, const PlaneRep& a, const PlaneRep& b, const PlaneRep& c,
                                const PlaneRep& d) {
    const Line2 l1 = line_through(a.point(), b.point());
    const Line2 l2 = line_through(c.point(), d.point());
    if (l1 == l2) throw Error(ErrorCode::CoincidentLines, "l(a,b) = l(c,d)");
    ProjPoint x = meet(l1, l2);
    if (model.is_base_point(x)) {
        throw Error(ErrorCode::BasePointResult, "the twisted cubics meet on the blown-down line over (" + format_point(x) + ")");
    }
    return PlaneRep(model, std::move(x));
}

/// Points (s:t) of P^1: over Q by increasing max(|s|,|t|), over F_p all p+1.
inline std::vector<std::pair<BigInt, BigInt>> line_params(FieldTag f, std::size_t limit) {
    std::vector<std::pair<BigInt, BigInt>> out{{1, 0}, {0, 1}};
    if (!f.is_rational()) {
        for (std::int64_t t = 1; t < f.prime() && out.size() < limit; ++t) out.push_back({1, t});
        return out;
    }
    for (std::int64_t r = 1; out.size() < limit; ++r)
        for (std::int64_t s = 1; s <= r && out.size() < limit; ++s)
            for (std::int64_t t = -r; t <= r; ++t) {
                if (std::max(s, std::abs(t)) != r || std::gcd(s, t) != 1 || t == 0) continue;
                out.push_back({s, t});
            }
    return out;
}

struct TwistedCubicSample {
    std::vector<ProjPoint> points;  // in P^3
    std::vector<ProjPoint> params;  // matching points of l(a,b)
    std::size_t skipped = 0;        // parameters landing on base points
};

/// Points of Γ(a,b) = p^{-1}(l(a,b)), from parameters s a + t b with (s:t)
/// in the small_points order on P^1.
inline TwistedCubicSample twisted_cubic_samples(const BlowupModel& model, const PlaneRep& a, const PlaneRep& b, std::size_t n) {
    if (a == b) throw Error(ErrorCode::CoincidentPoints, "Γ(a,a) is not defined");
    TwistedCubicSample out;
    const FieldTag f = model.field();
    for (const auto& [s, t] : line_params(f, n + 16)) {
        if (out.points.size() >= n) break;
        std::vector<BigInt> raw(3);
        for (std::size_t i = 0; i < 3; ++i) raw[i] = s * a.point()[i] + t * b.point()[i];
        const ProjPoint q = normalize(raw, f);
        if (model.is_base_point(q)) {
            ++out.skipped;
            continue;
        }
        out.points.push_back(embed(model, q));
        out.params.push_back(q);
    }
    return out;
}

/// True when no four of the points are coplanar.
inline bool no_four_coplanar(const std::vector<ProjPoint>& pts, FieldTag f) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    const linalg::Matrix m{pts[i].coords(), pts[j].coords(), pts[k].coords(), pts[l].coords()};
                    if (linalg::rank(m, 4, f) < 4) return false;
                }
    return true;
}

/// The unique hyperplane through the given points of P^3.
inline Hyperplane3 hyperplane_through(const std::vector<ProjPoint>& pts) {
    if (pts.empty()) throw Error(ErrorCode::DegenerateSample, "no points");
    linalg::Matrix m;
    for (const auto& p : pts) m.push_back(p.coords());
    const auto ker = linalg::kernel(m, 4, pts[0].field());
    if (ker.size() != 1) {
        throw Error(ErrorCode::DegenerateSample, "points span a pencil of " + std::to_string(ker.size()) + " hyperplanes");
    }
    return Hyperplane3(ker[0], pts[0].field());
}

/// Σ λ_i f_i for a hyperplane λ: the plane cubic p(C) of the section C.
inline PlaneCubic pullback_cubic(const BlowupModel& model, const Hyperplane3& h) {
    std::vector<CubicForm::Term> terms;
    for (std::size_t i = 0; i < 4; ++i)
        for (const auto& t : model.cubics()[i].terms()) terms.push_back({t.exponent, reduce(h.coords()[i] * t.coeff, model.field())});
    return PlaneCubic(CubicForm(3, std::move(terms)), model.field());
}

/// x o_(C,p) y := p^{-1}(p(x) o p(y)) inside the plane cubic p(C).
inline PlaneRep modified_compose(const BlowupModel& model, const Hyperplane3& section, const PlaneRep& x, const PlaneRep& y) {
    if (!section.contains(embed(model, x.point())) || !section.contains(embed(model, y.point()))) {
        throw Error(ErrorCode::NotOnSection, "point not on the plane section C");
    }
    ProjPoint z = cubic_compose(pullback_cubic(model, section), x.point(), y.point());
    if (model.is_base_point(z)) throw Error(ErrorCode::BasePointResult, "composition lands on a blown-down line");
    return PlaneRep(model, std::move(z));
}

/// Checks *(a,b;c,d) = a o_(C,p) b for the plane section C through
/// a, b and x = *(a,b;c,d).
inline bool verify_claim1(const BlowupModel& model, const PlaneRep& a, const PlaneRep& b, const PlaneRep& c, const PlaneRep& d) {
    const PlaneRep x = quaternary_star(model, a, b, c, d);
    const Hyperplane3 section = hyperplane_through({embed(model, a.point()), embed(model, b.point()), embed(model, x.point())});
    return modified_compose(model, section, a, b) == x;
}

struct Claim1Report {
    std::size_t verified = 0;    // non-degenerate quadruples checked
    std::size_t held = 0;        // of which the identity held
    std::size_t degenerate = 0;  // draws rejected, by reason below
    std::map<std::string, std::size_t> degenerate_reasons;
    std::vector<std::string> failures;  // full coordinates of every counterexample
};

/// A random point of P^2 off the base locus: residues over F_p, coordinates
/// in [-coord_bound, coord_bound] over Q.
inline PlaneRep random_plane_rep(const BlowupModel& model, std::mt19937_64& rng, std::int64_t coord_bound = 5) {
    const FieldTag f = model.field();
    const std::int64_t lo = f.is_rational() ? -coord_bound : 0;
    const std::int64_t hi = f.is_rational() ? coord_bound : f.prime() - 1;
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    while (true) {
        std::vector<BigInt> v{d(rng), d(rng), d(rng)};
        if (is_zero(v, f)) continue;
        ProjPoint q = normalize(v, f);
        if (!model.is_base_point(q)) return PlaneRep(model, std::move(q));
    }
}

/// Checks verify_claim1 on `target` non-degenerate random quadruples. Candidates
/// come from one seeded stream and are consumed in order, so the result does
/// not depend on the thread count.
inline Claim1Report claim1_suite(const BlowupModel& model, std::size_t target, std::uint64_t seed, unsigned threads = 1,
                                 std::int64_t coord_bound = 5) {
    std::mt19937_64 rng(seed);
    Claim1Report rep;
    struct Outcome {
        std::optional<bool> held;
        std::string reason;
        std::string coords;
    };
    const std::size_t max_rounds = 50;
    for (std::size_t round = 0; round < max_rounds && rep.verified < target; ++round) {
        const std::size_t batch = std::max<std::size_t>(target - rep.verified, 8) * 2;
        std::vector<std::array<PlaneRep, 4>> quads;
        for (std::size_t i = 0; i < batch; ++i) {
            quads.push_back({random_plane_rep(model, rng, coord_bound), random_plane_rep(model, rng, coord_bound),
                             random_plane_rep(model, rng, coord_bound), random_plane_rep(model, rng, coord_bound)});
        }
        std::vector<Outcome> results(batch);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < batch; i = next++) {
                const auto& [a, b, c, d] = quads[i];
                auto& out = results[i];
                out.coords = "a=(" + format_point(a.point()) + ") b=(" + format_point(b.point()) + ") c=(" + format_point(c.point()) +
                             ") d=(" + format_point(d.point()) + ")";
                try {
                    out.held = verify_claim1(model, a, b, c, d);
                } catch (const Error& e) {
                    out.reason = error_name(e.code());
                }
            }
        };
        detail::run_parallel(worker, threads);
        for (const auto& r : results) {
            if (rep.verified >= target) break;
            if (!r.held) {
                ++rep.degenerate;
                ++rep.degenerate_reasons[r.reason];
                continue;
            }
            ++rep.verified;
            if (*r.held) {
                ++rep.held;
            } else {
                rep.failures.push_back(r.coords);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Generation of P^2 under *(a,b;c,d) = l(a,b) ∩ l(c,d)
// ---------------------------------------------------------------------------

struct PlaneClosure {
    std::vector<ProjPoint> points;          // sorted
    std::vector<std::size_t> sizes;         // cumulative size after each generation (index 0: seeds)
    bool saturated = false;                 // no admissible new point appeared
    bool contains(const ProjPoint& p) const { return std::binary_search(points.begin(), points.end(), p); }
};

struct PlaneClosureOptions {
    std::optional<std::int64_t> height_cap;  // required over Q: max |coordinate| of kept points
    int max_generations = std::numeric_limits<int>::max();
    std::uint64_t work_limit = 4'000'000'000ULL;  // max pairs examined per generation
};

namespace detail {

using Triple = std::array<std::int64_t, 3>;

inline std::optional<Triple> normalize_triple(Triple v, std::int64_t p) {
    if (p == 0) {
        const std::int64_t g = std::gcd(std::gcd(v[0], v[1]), v[2]);
        if (g == 0) return std::nullopt;
        const auto lead = *std::find_if(v.begin(), v.end(), [](std::int64_t c) { return c != 0; });
        const std::int64_t s = lead < 0 ? -g : g;
        for (auto& c : v) c /= s;
        return v;
    }
    for (auto& c : v) c = ((c % p) + p) % p;
    const auto it = std::find_if(v.begin(), v.end(), [](std::int64_t c) { return c != 0; });
    if (it == v.end()) return std::nullopt;
    const std::int64_t inv = inverse_mod(*it, p);
    for (auto& c : v) c = (c * inv) % p;
    return v;
}

inline std::optional<Triple> cross_triple(const Triple& a, const Triple& b, std::int64_t p) {
    return normalize_triple({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}, p);
}

}  // namespace detail

/// Closure of the seeds under intersections of lines through constructed
/// points. Over F_p this runs to the exact fixpoint; over Q points with a
/// coordinate above the cap are discarded.
inline PlaneClosure plane_closure(FieldTag field, const std::vector<ProjPoint>& seeds, const PlaneClosureOptions& opts = {}) {
    using detail::Triple;
    if (seeds.size() < 4) throw Error(ErrorCode::DegenerateSeeds, "need at least four seeds");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            for (std::size_t k = j + 1; k < 4; ++k)
                if (reduce(linalg::det3(seeds[i].coords(), seeds[j].coords(), seeds[k].coords()), field) == 0) {
                    throw Error(ErrorCode::DegenerateSeeds, "three of the first four seeds are collinear");
                }
    const std::int64_t p = field.is_rational() ? 0 : field.prime();
    std::int64_t cap = 0;
    if (p == 0) {
        if (!opts.height_cap) throw Error(ErrorCode::BoundTooLarge, "closure over Q needs a height cap");
        cap = *opts.height_cap;
        if (cap < 1 || cap > 10000) throw Error(ErrorCode::BoundTooLarge, "height cap must lie in [1, 10000]");
    }
    auto admissible = [&](const Triple& t) {
        return p != 0 || std::all_of(t.begin(), t.end(), [cap](std::int64_t c) { return std::abs(c) <= cap; });
    };

    std::set<Triple> point_set, line_set;
    std::vector<Triple> points, lines;
    std::vector<Triple> fresh_points;
    for (const auto& s : seeds) {
        if (s.size() != 3 || s.field() != field) throw Error(ErrorCode::DegenerateSeeds, "seed not in P^2 over the field");
        Triple t{};
        for (std::size_t i = 0; i < 3; ++i) t[i] = to_int64(s[i], "seed coordinate");
        const auto n = detail::normalize_triple(t, p);
        if (n && point_set.insert(*n).second) {
            points.push_back(*n);
            fresh_points.push_back(*n);
        }
    }

    PlaneClosure out;
    out.sizes.push_back(points.size());
    for (int g = 1; g <= opts.max_generations; ++g) {
        if (static_cast<long double>(fresh_points.size()) * points.size() > opts.work_limit) {
            throw Error(ErrorCode::BoundTooLarge, "generation " + std::to_string(g) + " would join " +
                                                      std::to_string(fresh_points.size()) + " x " + std::to_string(points.size()) + " points");
        }
        // new lines: through a fresh point and any point
        std::vector<Triple> fresh_lines;
        for (const auto& a : fresh_points)
            for (const auto& b : points) {
                if (a == b) continue;
                const auto l = detail::cross_triple(a, b, p);
                if (l && line_set.insert(*l).second) {
                    lines.push_back(*l);
                    fresh_lines.push_back(*l);
                }
            }
        if (static_cast<long double>(fresh_lines.size()) * lines.size() > opts.work_limit) {
            throw Error(ErrorCode::BoundTooLarge, "generation " + std::to_string(g) + " would meet " +
                                                      std::to_string(fresh_lines.size()) + " x " + std::to_string(lines.size()) + " lines");
        }
        // new points: a fresh line met with any line
        std::set<Triple> candidates;
        for (const auto& l1 : fresh_lines)
            for (const auto& l2 : lines) {
                if (l1 == l2) continue;
                const auto x = detail::cross_triple(l1, l2, p);
                if (x && admissible(*x) && !point_set.count(*x)) candidates.insert(*x);
            }
        if (candidates.empty()) {
            out.saturated = true;
            break;
        }
        fresh_points.assign(candidates.begin(), candidates.end());
        for (const auto& x : fresh_points) {
            point_set.insert(x);
            points.push_back(x);
        }
        out.sizes.push_back(points.size());
    }
    for (const auto& t : point_set) {
        std::vector<BigInt> v(t.begin(), t.end());
        out.points.push_back(normalize(v, field));
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

}  // namespace cubic_mw

#endif
