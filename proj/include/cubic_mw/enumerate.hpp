#ifndef CUBIC_MW_ENUMERATE_HPP
#define CUBIC_MW_ENUMERATE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "surface.hpp"
#include "version.hpp"

namespace cubic_mw {

/// The height-ordered list V_H of rational points with h(x) <= bound.
/// Ranks are 1-based positions in this list.
class PointRegistry {
   public:
    PointRegistry(CubicSurface surface, std::int64_t bound, std::vector<SurfacePoint> points)
        : surface_(std::move(surface)), bound_(bound), points_(std::move(points)) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& p = points_[i];
            if (!surface_.contains(p.point)) {
                throw Error(ErrorCode::NotOnSurface, "registry point (" + format_point(p.point) + ")");
            }
            if (p.height != height(p.point) || p.height > bound_) {
                throw Error(ErrorCode::InvalidCoefficients, "registry point (" + format_point(p.point) + ") violates the height bound");
            }
            if (i > 0 && !height_order(points_[i - 1], p)) {
                throw Error(ErrorCode::UnsortedInput, "registry not strictly height-ordered at rank " + std::to_string(i + 1));
            }
            index_.emplace(p.point.coords(), i + 1);
        }
    }

    const CubicSurface& surface() const noexcept { return surface_; }
    std::int64_t bound() const noexcept { return bound_; }
    const std::vector<SurfacePoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    const SurfacePoint& at(std::size_t rank) const { return points_.at(rank - 1); }

    std::optional<std::size_t> rank_of(const ProjPoint& p) const {
        const auto it = index_.find(p.coords());
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const ProjPoint& p) const { return index_.count(p.coords()) != 0; }

    friend bool operator==(const PointRegistry& a, const PointRegistry& b) {
        return a.surface_ == b.surface_ && a.bound_ == b.bound_ && a.points_ == b.points_;
    }

   private:
    CubicSurface surface_;
    std::int64_t bound_;
    std::vector<SurfacePoint> points_;
    std::map<std::vector<BigInt>, std::size_t> index_;
};

struct EnumerateOptions {
    unsigned threads = 1;
    bool sieve = true;
};

namespace detail {

/// Exact cube root of v if v is a perfect cube.
inline std::optional<std::int64_t> exact_cbrt(std::int64_t v) {
    auto c = static_cast<std::int64_t>(std::llround(std::cbrt(static_cast<double>(v))));
    auto cube = [](std::int64_t x) { return static_cast<__int128>(x) * x * x; };
    while (cube(c) > v) --c;
    while (cube(c + 1) <= v) ++c;
    if (cube(c) != v) return std::nullopt;
    return c;
}

inline std::int64_t gcd4(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return std::gcd(std::gcd(a, b), std::gcd(c, d));
}

inline std::vector<SurfacePoint> to_sorted_points(std::vector<std::array<std::int64_t, 4>>& raw) {
    std::vector<SurfacePoint> out;
    out.reserve(raw.size());
    for (const auto& r : raw) {
        std::vector<BigInt> v(r.begin(), r.end());
        ProjPoint p = normalize(v);
        BigInt h = height(p);
        out.push_back({std::move(p), std::move(h)});
    }
    std::sort(out.begin(), out.end(), height_order);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Default worker count: CUBIC_MW_THREADS, else the hardware concurrency.
inline unsigned default_threads() {
    if (const char* env = std::getenv("CUBIC_MW_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// All primitive points (up to sign) of Σ a_i x_i^3 = 0 with Σ|x_i| <= bound,
/// sorted by (height, lex).
///
/// The search runs over (x2, x3, x4) with the first nonzero entry positive,
/// which picks one representative per projective point, and solves for x1
/// by an exact integer cube root. A residue filter mod 63 rejects values
/// that are not of the form a1 * c^3 before the root is taken.
inline PointRegistry enumerate_points(std::span<const BigInt> coeffs, std::int64_t bound,
                                      const EnumerateOptions& opts = {}) {
    CubicSurface surface = CubicSurface::diagonal(coeffs);
    if (bound < 1) throw Error(ErrorCode::BoundTooLarge, "height bound must be positive");
    std::array<std::int64_t, 4> a{};
    for (std::size_t i = 0; i < 4; ++i) a[i] = to_int64(coeffs[i], "coefficient");
    const std::int64_t amax = std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2]), std::abs(a[3])});
    const long double worst = 4.0L * amax * static_cast<long double>(bound) * bound * bound;
    if (worst > 4.0e18L) throw Error(ErrorCode::BoundTooLarge, "height bound too large for 64-bit search");

    const std::int64_t H = bound;
    std::vector<std::int64_t> cube(static_cast<std::size_t>(H) + 1);
    for (std::int64_t i = 0; i <= H; ++i) cube[static_cast<std::size_t>(i)] = i * i * i;
    auto signed_cube = [&](std::int64_t x) { return x >= 0 ? cube[static_cast<std::size_t>(x)] : -cube[static_cast<std::size_t>(-x)]; };

    // allowed[r]: r ≡ a1 c^3 (mod 63) for some c.
    std::array<bool, 63> allowed{};
    for (std::int64_t c = 0; c < 63; ++c) allowed[static_cast<std::size_t>((((a[0] % 63) * ((c * c * c) % 63)) % 63 + 63) % 63)] = true;
    std::array<std::int64_t, 4> a63{};
    for (std::size_t i = 0; i < 4; ++i) a63[i] = ((a[i] % 63) + 63) % 63;

    std::atomic<std::int64_t> next_x2{0};
    const unsigned nthreads = std::max(1u, opts.threads);
    std::vector<std::vector<std::array<std::int64_t, 4>>> found(nthreads);

    auto worker = [&](unsigned id) {
        auto& out = found[id];
        for (std::int64_t x2 = next_x2++; x2 <= H; x2 = next_x2++) {
            const std::int64_t r2 = H - x2;
            const std::int64_t s2 = a[1] * cube[static_cast<std::size_t>(x2)];
            for (std::int64_t x3 = (x2 == 0 ? 0 : -r2); x3 <= r2; ++x3) {
                const std::int64_t r3 = r2 - std::abs(x3);
                const std::int64_t s3 = s2 + a[2] * signed_cube(x3);
                const std::int64_t m3 = (a63[1] * (signed_cube(x2) % 63 + 63) + a63[2] * (signed_cube(x3) % 63 + 63)) % 63;
                for (std::int64_t x4 = (x2 == 0 && x3 == 0 ? 1 : -r3); x4 <= r3; ++x4) {
                    const std::int64_t c4 = signed_cube(x4);
                    if (opts.sieve) {
                        const std::int64_t m = (m3 + a63[3] * (c4 % 63 + 63)) % 63;
                        if (!allowed[static_cast<std::size_t>((63 - m) % 63)]) continue;
                    }
                    const std::int64_t s = -(s3 + a[3] * c4);
                    if (s % a[0] != 0) continue;
                    const auto c = detail::exact_cbrt(s / a[0]);
                    if (!c || std::abs(*c) > r3 - std::abs(x4)) continue;
                    if (detail::gcd4(*c, x2, x3, x4) != 1) continue;
                    out.push_back({*c, x2, x3, x4});
                }
            }
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }

    std::vector<std::array<std::int64_t, 4>> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    return PointRegistry(std::move(surface), bound, detail::to_sorted_points(all));
}

inline PointRegistry enumerate_points(std::initializer_list<long long> coeffs, std::int64_t bound,
                                      const EnumerateOptions& opts = {}) {
    std::vector<BigInt> v(coeffs.begin(), coeffs.end());
    return enumerate_points(std::span<const BigInt>(v), bound, opts);
}

inline constexpr std::int64_t kOracleMaxBound = 200;

/// Naive quadruple loop over every integer vector with Σ|x_i| <= bound,
/// keeping primitive zeros of the form with first nonzero entry positive.
/// Test oracle for enumerate_points; works for any integral surface.
inline PointRegistry brute_force_oracle(const CubicSurface& surface, std::int64_t bound) {
    if (bound > kOracleMaxBound) throw Error(ErrorCode::BoundTooLarge, "oracle bound " + std::to_string(bound) + " > 200");
    struct Term {
        Exponent e;
        std::int64_t c;
    };
    std::vector<Term> terms;
    for (const auto& t : surface.form().terms()) terms.push_back({t.exponent, to_int64(t.coeff, "coefficient")});

    std::vector<std::array<std::int64_t, 4>> hits;
    std::array<std::int64_t, 4> x{};
    const std::int64_t H = bound;
    for (x[0] = -H; x[0] <= H; ++x[0]) {
        const std::int64_t r1 = H - std::abs(x[0]);
        for (x[1] = -r1; x[1] <= r1; ++x[1]) {
            const std::int64_t r2 = r1 - std::abs(x[1]);
            for (x[2] = -r2; x[2] <= r2; ++x[2]) {
                const std::int64_t r3 = r2 - std::abs(x[2]);
                for (x[3] = -r3; x[3] <= r3; ++x[3]) {
                    std::int64_t value = 0;
                    for (const auto& t : terms) {
                        std::int64_t m = t.c;
                        for (std::size_t i = 0; i < 4; ++i)
                            for (int k = 0; k < t.e[i]; ++k) m *= x[i];
                        value += m;
                    }
                    if (value != 0) continue;
                    const auto lead = std::find_if(x.begin(), x.end(), [](std::int64_t v) { return v != 0; });
                    if (lead == x.end() || *lead < 0) continue;
                    if (detail::gcd4(x[0], x[1], x[2], x[3]) != 1) continue;
                    hits.push_back(x);
                }
            }
        }
    }
    return PointRegistry(surface, bound, detail::to_sorted_points(hits));
}

// ---------------------------------------------------------------------------
// Point-list files
// ---------------------------------------------------------------------------

inline std::string surface_header(const CubicSurface& s) {
    if (s.form().is_diagonal()) return "# coeffs: " + format_coords(s.form().diagonal_coefficients());
    return "# form: " + s.form().to_string();
}

inline std::string registry_to_text(const PointRegistry& reg, const std::vector<std::string>& extra_header = {}) {
    std::ostringstream os;
    os << "# " << kToolName << " " << kToolVersion << "\n";
    for (const auto& h : extra_header) os << "# " << h << "\n";
    os << surface_header(reg.surface()) << "\n";
    os << "# height: " << reg.bound() << "\n";
    os << "# points: " << reg.size() << "\n";
    for (const auto& p : reg.points()) os << format_point(p.point) << "\n";
    return os.str();
}

inline void save_registry(const PointRegistry& reg, const std::string& path, const std::vector<std::string>& extra_header = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << registry_to_text(reg, extra_header);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

inline PointRegistry registry_from_text(std::istream& in, const CubicSurface& surface) {
    std::vector<SurfacePoint> points;
    std::optional<std::int64_t> bound;
    std::string line;
    std::size_t lineno = 0;
    auto where = [&] { return "line " + std::to_string(lineno); };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line[0] == '#') {
            constexpr std::string_view key = "# height:";
            if (line.starts_with(key)) {
                const auto v = parse_integers(std::string_view(line).substr(key.size()));
                if (v.size() != 1) throw Error(ErrorCode::ParseError, where() + ": bad height header");
                bound = to_int64(v[0], "height");
            }
            continue;
        }
        std::vector<BigInt> raw;
        try {
            raw = parse_integers(line);
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, where() + ": " + e.what());
        }
        if (raw.size() != 4) throw Error(ErrorCode::ParseError, where() + ": expected 4 integers");
        ProjPoint p = [&] {
            try {
                return normalize(raw);
            } catch (const Error& e) {
                throw Error(ErrorCode::ParseError, where() + ": " + e.what());
            }
        }();
        if (p.coords() != raw) throw Error(ErrorCode::ParseError, where() + ": point not in normalized form");
        if (!surface.contains(p)) throw Error(ErrorCode::NotOnSurface, where() + ": (" + line + ") is not on " + surface.label());
        BigInt h = height(p);
        if (!points.empty() && !height_order(points.back(), SurfacePoint{p, h})) {
            throw Error(ErrorCode::UnsortedInput, where() + ": points not in (height, lex) order");
        }
        points.push_back({std::move(p), std::move(h)});
    }
    std::int64_t b = 0;
    if (bound) {
        b = *bound;
    } else {
        for (const auto& p : points) b = std::max(b, to_int64(p.height, "height"));
    }
    return PointRegistry(surface, b, std::move(points));
}

inline PointRegistry load_registry(const std::string& path, const CubicSurface& surface) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
    return registry_from_text(in, surface);
}

}  // namespace cubic_mw

#endif
