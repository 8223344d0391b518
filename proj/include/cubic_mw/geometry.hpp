#ifndef CUBIC_MW_GEOMETRY_HPP
#define CUBIC_MW_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace cubic_mw {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Fields: the rationals (points carried as primitive integer vectors) or a
// prime field F_p with p < 2^31 so that products fit in 64 bits.
// ---------------------------------------------------------------------------

class FieldTag {
   public:
    constexpr FieldTag() = default;

    static constexpr FieldTag rationals() noexcept { return FieldTag(); }

    static FieldTag prime_field(std::int64_t p) {
        if (p < 2 || p >= (std::int64_t{1} << 31)) {
            throw Error(ErrorCode::InvalidField, "prime out of range: " + std::to_string(p));
        }
        for (std::int64_t d = 2; d * d <= p; ++d) {
            if (p % d == 0) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
        }
        FieldTag f;
        f.prime_ = static_cast<std::uint32_t>(p);
        return f;
    }

    constexpr bool is_rational() const noexcept { return prime_ == 0; }
    constexpr std::int64_t prime() const noexcept { return prime_; }

    std::string to_string() const { return is_rational() ? "q" : "fp:" + std::to_string(prime_); }

    friend constexpr bool operator==(FieldTag, FieldTag) = default;

   private:
    std::uint32_t prime_ = 0;
};

/// Parses `q` or `fp:<p>`.
inline FieldTag parse_field(std::string_view text) {
    if (text == "q" || text == "Q") return FieldTag::rationals();
    if (text.starts_with("fp:")) {
        const std::string digits(text.substr(3));
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            digits.size() > 10) {
            throw Error(ErrorCode::ParseError, "bad field '" + std::string(text) + "'");
        }
        return FieldTag::prime_field(std::stoll(digits));
    }
    throw Error(ErrorCode::ParseError, "bad field '" + std::string(text) + "' (expected q or fp:<p>)");
}

/// Canonical residue in [0, p) over F_p; identity over Q.
inline BigInt reduce(const BigInt& v, FieldTag f) {
    if (f.is_rational()) return v;
    BigInt r = v % f.prime();
    if (r < 0) r += f.prime();
    return r;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw Error(ErrorCode::ZeroVector, "element not invertible mod " + std::to_string(p));
    return t < 0 ? t + p : t;
}

// ---------------------------------------------------------------------------
// Projective points
// ---------------------------------------------------------------------------

class ProjPoint;
ProjPoint normalize(std::span<const BigInt> raw, FieldTag field = FieldTag::rationals());

/// A point of P^2 or P^3 in canonical coordinates. Over Q: primitive
/// integers with first nonzero coordinate positive. Over F_p: residues with
/// first nonzero coordinate equal to 1.
class ProjPoint {
   public:
    const std::vector<BigInt>& coords() const noexcept { return coords_; }
    const BigInt& operator[](std::size_t i) const { return coords_[i]; }
    std::size_t size() const noexcept { return coords_.size(); }
    FieldTag field() const noexcept { return field_; }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.field_ == b.field_ && a.coords_ == b.coords_;
    }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        if (a.field_.prime() != b.field_.prime()) return a.field_.prime() < b.field_.prime();
        return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
    }

   private:
    friend ProjPoint normalize(std::span<const BigInt> raw, FieldTag field);
    ProjPoint(std::vector<BigInt> coords, FieldTag field) : coords_(std::move(coords)), field_(field) {}

    std::vector<BigInt> coords_;
    FieldTag field_;
};

inline ProjPoint normalize(std::span<const BigInt> raw, FieldTag field) {
    if (raw.size() != 3 && raw.size() != 4) {
        throw Error(ErrorCode::DimensionMismatch, "expected 3 or 4 coordinates, got " + std::to_string(raw.size()));
    }
    std::vector<BigInt> c;
    c.reserve(raw.size());
    for (const auto& v : raw) c.push_back(reduce(v, field));

    const auto lead = std::find_if(c.begin(), c.end(), [](const BigInt& v) { return v != 0; });
    if (lead == c.end()) throw Error(ErrorCode::ZeroVector, "all coordinates vanish");

    if (field.is_rational()) {
        BigInt g = 0;
        for (const auto& v : c) g = boost::multiprecision::gcd(g, v);
        if (*lead < 0) g = -g;
        if (g != 1) {
            for (auto& v : c) v /= g;
        }
    } else {
        const std::int64_t p = field.prime();
        const BigInt inv = inverse_mod(static_cast<std::int64_t>(*lead), p);
        for (auto& v : c) v = (v * inv) % p;
    }
    return ProjPoint(std::move(c), field);
}

inline ProjPoint normalize(std::initializer_list<long long> raw, FieldTag field = FieldTag::rationals()) {
    std::vector<BigInt> v(raw.begin(), raw.end());
    return normalize(std::span<const BigInt>(v), field);
}

inline std::int64_t to_int64(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::InvalidCoefficients, std::string(what) + " does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(v);
}

inline BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product of unequal lengths");
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Sum of absolute values of the canonical coordinates.
inline BigInt height(const ProjPoint& x) {
    BigInt h = 0;
    for (const auto& v : x.coords()) h += boost::multiprecision::abs(v);
    return h;
}

// ---------------------------------------------------------------------------
// Cubic forms in 3 or 4 variables, stored sparsely by exponent
// ---------------------------------------------------------------------------

using Exponent = std::array<std::uint8_t, 4>;

/// The degree-3 monomials in `dim` variables, in descending lex order
/// (x0^3, x0^2 x1, ...). Defines the coefficient order used by the linear
/// algebra on cubic systems.
inline std::vector<Exponent> cubic_monomials(std::size_t dim) {
    std::vector<Exponent> out;
    for (int a = 3; a >= 0; --a)
        for (int b = 3 - a; b >= 0; --b)
            for (int c = 3 - a - b; c >= 0; --c) {
                const int d = 3 - a - b - c;
                if (dim == 3 && d != 0) continue;
                out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
                               static_cast<std::uint8_t>(d)});
            }
    return out;
}

inline BigInt monomial_value(const Exponent& e, std::span<const BigInt> x) {
    BigInt v = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int k = 0; k < e[i]; ++k) v *= x[i];
    return v;
}

class CubicForm {
   public:
    struct Term {
        Exponent exponent{};
        BigInt coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    CubicForm(std::size_t dim, std::vector<Term> terms) : dim_(dim) {
        if (dim != 3 && dim != 4) throw Error(ErrorCode::DimensionMismatch, "cubic forms need 3 or 4 variables");
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponent > b.exponent; });
        for (auto& t : terms) {
            int deg = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                deg += t.exponent[i];
                if (i >= dim && t.exponent[i] != 0) throw Error(ErrorCode::DimensionMismatch, "exponent outside form");
            }
            if (deg != 3) throw Error(ErrorCode::InvalidCoefficients, "term of degree " + std::to_string(deg));
            if (t.coeff == 0) continue;
            if (!terms_.empty() && terms_.back().exponent == t.exponent) {
                terms_.back().coeff += t.coeff;
                if (terms_.back().coeff == 0) terms_.pop_back();
            } else {
                terms_.push_back(std::move(t));
            }
        }
        if (terms_.empty()) throw Error(ErrorCode::InvalidCoefficients, "cubic form is identically zero");
    }

    /// Σ a_i x_i^3.
    static CubicForm diagonal(std::span<const BigInt> coeffs) {
        std::vector<Term> terms;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            Exponent e{};
            e[i] = 3;
            terms.push_back({e, coeffs[i]});
        }
        return CubicForm(coeffs.size(), std::move(terms));
    }

    static CubicForm diagonal(std::initializer_list<long long> coeffs) {
        std::vector<BigInt> v(coeffs.begin(), coeffs.end());
        return diagonal(std::span<const BigInt>(v));
    }

    /// Builds a form from a coefficient vector indexed like cubic_monomials(dim).
    static CubicForm from_monomial_coeffs(std::size_t dim, std::span<const BigInt> coeffs) {
        const auto mons = cubic_monomials(dim);
        if (coeffs.size() != mons.size()) throw Error(ErrorCode::DimensionMismatch, "coefficient count");
        std::vector<Term> terms;
        for (std::size_t i = 0; i < mons.size(); ++i) terms.push_back({mons[i], coeffs[i]});
        return CubicForm(dim, std::move(terms));
    }

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    bool is_diagonal() const {
        if (terms_.size() != dim_) return false;
        return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
            return std::count(t.exponent.begin(), t.exponent.end(), std::uint8_t{3}) == 1;
        });
    }

    /// Coefficients a_i of Σ a_i x_i^3 (zero where absent); meaningful when
    /// the form has no mixed terms.
    std::vector<BigInt> diagonal_coefficients() const {
        std::vector<BigInt> a(dim_, 0);
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < dim_; ++i)
                if (t.exponent[i] == 3) a[i] = t.coeff;
        return a;
    }

    std::vector<BigInt> monomial_coeffs() const {
        const auto mons = cubic_monomials(dim_);
        std::vector<BigInt> out(mons.size(), 0);
        for (const auto& t : terms_) {
            const auto it = std::find(mons.begin(), mons.end(), t.exponent);
            out[static_cast<std::size_t>(it - mons.begin())] = t.coeff;
        }
        return out;
    }

    /// Exact value on an arbitrary (unnormalized) integer vector.
    BigInt evaluate_raw(std::span<const BigInt> x) const {
        check_dim(x.size());
        BigInt s = 0;
        for (const auto& t : terms_) s += t.coeff * monomial_value(t.exponent, x);
        return s;
    }

    std::string to_string() const {
        static constexpr const char* names[] = {"x0", "x1", "x2", "x3"};
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            BigInt c = t.coeff;
            if (!first) {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            } else if (c < 0) {
                os << "-";
                c = -c;
            }
            first = false;
            bool wrote = false;
            if (c != 1) {
                os << c;
                wrote = true;
            }
            for (std::size_t i = 0; i < dim_; ++i) {
                if (t.exponent[i] == 0) continue;
                if (wrote) os << "*";
                os << names[i];
                if (t.exponent[i] > 1) os << "^" << int(t.exponent[i]);
                wrote = true;
            }
        }
        return os.str();
    }

    void check_dim(std::size_t n) const {
        if (n != dim_) {
            throw Error(ErrorCode::DimensionMismatch,
                        "form in " + std::to_string(dim_) + " variables applied to " + std::to_string(n) + " coordinates");
        }
    }

    friend bool operator==(const CubicForm&, const CubicForm&) = default;

   private:
    std::size_t dim_;
    std::vector<Term> terms_;
};

/// F(x) at the canonical representative, reduced into the point's field.
inline BigInt eval(const CubicForm& f, const ProjPoint& x) {
    return reduce(f.evaluate_raw(x.coords()), x.field());
}

inline std::vector<BigInt> gradient(const CubicForm& f, const ProjPoint& x) {
    f.check_dim(x.size());
    std::vector<BigInt> g(f.dim(), 0);
    for (const auto& t : f.terms()) {
        for (std::size_t i = 0; i < f.dim(); ++i) {
            if (t.exponent[i] == 0) continue;
            Exponent e = t.exponent;
            --e[i];
            g[i] += t.coeff * t.exponent[i] * monomial_value(e, x.coords());
        }
    }
    for (auto& v : g) v = reduce(v, x.field());
    return g;
}

/// Coefficients (c0, c1, c2, c3) with F(x + t y) = c0 + c1 t + c2 t^2 + c3 t^3.
inline std::array<BigInt, 4> polar_coeffs_raw(const CubicForm& f, std::span<const BigInt> x, std::span<const BigInt> y) {
    f.check_dim(x.size());
    f.check_dim(y.size());
    std::array<BigInt, 4> total{0, 0, 0, 0};
    for (const auto& t : f.terms()) {
        std::array<BigInt, 4> poly{1, 0, 0, 0};
        int deg = 0;
        for (std::size_t i = 0; i < f.dim(); ++i) {
            for (int k = 0; k < t.exponent[i]; ++k) {
                // poly *= (x_i + y_i t)
                for (int d = deg + 1; d >= 1; --d) poly[d] = poly[d] * x[i] + poly[d - 1] * y[i];
                poly[0] *= x[i];
                ++deg;
            }
        }
        for (int d = 0; d < 4; ++d) total[d] += t.coeff * poly[d];
    }
    return total;
}

inline std::array<BigInt, 4> polar_coeffs(const CubicForm& f, const ProjPoint& x, const ProjPoint& y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "points of different dimension");
    auto c = polar_coeffs_raw(f, x.coords(), y.coords());
    for (auto& v : c) v = reduce(v, x.field());
    return c;
}

// ---------------------------------------------------------------------------
// Lines in P^2 and hyperplanes in P^3 (dual coordinates)
// ---------------------------------------------------------------------------

template <std::size_t N>
class DualCoords {
   public:
    explicit DualCoords(std::span<const BigInt> raw, FieldTag field = FieldTag::rationals())
        : coords_(check(normalize(raw, field))) {}
    explicit DualCoords(ProjPoint p) : coords_(check(std::move(p))) {}

    const std::vector<BigInt>& coords() const noexcept { return coords_.coords(); }
    const ProjPoint& as_point() const noexcept { return coords_; }
    FieldTag field() const noexcept { return coords_.field(); }

    bool contains(const ProjPoint& x) const { return reduce(dot(coords(), x.coords()), field()) == 0; }

    friend bool operator==(const DualCoords&, const DualCoords&) = default;
    friend bool operator<(const DualCoords& a, const DualCoords& b) { return a.coords_ < b.coords_; }

   private:
    static ProjPoint check(ProjPoint p) {
        if (p.size() != N) throw Error(ErrorCode::DimensionMismatch, "dual vector of wrong length");
        return p;
    }
    ProjPoint coords_;
};

using Line2 = DualCoords<3>;
using Hyperplane3 = DualCoords<4>;

inline std::array<BigInt, 3> cross(std::span<const BigInt> a, std::span<const BigInt> b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero(std::span<const BigInt> v, FieldTag f) {
    return std::all_of(v.begin(), v.end(), [f](const BigInt& c) { return reduce(c, f) == 0; });
}

inline Line2 line_through(const ProjPoint& a, const ProjPoint& b) {
    if (a.size() != 3 || b.size() != 3) throw Error(ErrorCode::DimensionMismatch, "line_through needs points of P^2");
    const auto c = cross(a.coords(), b.coords());
    if (is_zero(c, a.field())) throw Error(ErrorCode::CoincidentPoints, "line through a point and itself");
    return Line2(c, a.field());
}

inline ProjPoint meet(const Line2& l1, const Line2& l2) {
    const auto c = cross(l1.coords(), l2.coords());
    if (is_zero(c, l1.field())) throw Error(ErrorCode::CoincidentLines, "meet of a line with itself");
    return normalize(c, l1.field());
}

// ---------------------------------------------------------------------------
// Text format: whitespace- or comma-separated signed decimal integers
// ---------------------------------------------------------------------------

inline BigInt parse_bigint(std::string_view tok) {
    std::size_t i = (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
    if (i == tok.size()) throw Error(ErrorCode::ParseError, "empty integer");
    for (std::size_t k = i; k < tok.size(); ++k) {
        if (tok[k] < '0' || tok[k] > '9') throw Error(ErrorCode::ParseError, "bad integer '" + std::string(tok) + "'");
    }
    BigInt v(std::string(tok.substr(i)));
    return tok[0] == '-' ? BigInt(-v) : v;
}

inline std::vector<BigInt> parse_integers(std::string_view line) {
    std::vector<BigInt> out;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_sep(line[j])) ++j;
        if (j > i) out.push_back(parse_bigint(line.substr(i, j - i)));
        i = j;
    }
    return out;
}

inline std::string format_coords(std::span<const BigInt> v, std::string_view sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i].str();
    }
    return s;
}

inline std::string format_point(const ProjPoint& p) { return format_coords(p.coords()); }

}  // namespace cubic_mw

#endif
