#ifndef CUBIC_MW_LINALG_HPP
#define CUBIC_MW_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "geometry.hpp"

namespace cubic_mw::linalg {

using Rational = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<BigInt>>;

namespace detail {

// Reduced row echelon form in place; returns pivot columns.
template <class T, class IsZero, class Div, class Sub>
std::vector<std::size_t> rref(std::vector<std::vector<T>>& m, std::size_t cols, IsZero is_zero, Div div, Sub submul) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && is_zero(m[sel][col])) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        const T piv = m[row][col];
        for (auto& v : m[row]) v = div(v, piv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || is_zero(m[r][col])) continue;
            const T factor = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] = submul(m[r][c], factor, m[row][c]);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
std::vector<std::vector<T>> null_basis_from_rref(const std::vector<std::vector<T>>& m, std::size_t cols,
                                                 const std::vector<std::size_t>& pivots, T one, T zero) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(cols, zero);
        v[free] = one;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<std::vector<Rational>> to_rational(const Matrix& m, std::size_t cols) {
    std::vector<std::vector<Rational>> q(m.size(), std::vector<Rational>(cols));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) q[r][c] = Rational(m[r][c]);
    return q;
}

inline std::vector<std::vector<std::int64_t>> to_modular(const Matrix& m, std::size_t cols, FieldTag field) {
    std::vector<std::vector<std::int64_t>> q(m.size(), std::vector<std::int64_t>(cols));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) q[r][c] = static_cast<std::int64_t>(reduce(m[r][c], field));
    return q;
}

inline auto modular_ops(std::int64_t p) {
    auto is_zero = [](std::int64_t v) { return v == 0; };
    auto div = [p](std::int64_t a, std::int64_t b) { return (a * inverse_mod(b, p)) % p; };
    auto submul = [p](std::int64_t a, std::int64_t f, std::int64_t b) { return (((a - f * b) % p) + p) % p; };
    return std::tuple{is_zero, div, submul};
}

inline auto rational_ops() {
    auto is_zero = [](const Rational& v) { return v == 0; };
    auto div = [](const Rational& a, const Rational& b) { return Rational(a / b); };
    auto submul = [](const Rational& a, const Rational& f, const Rational& b) { return Rational(a - f * b); };
    return std::tuple{is_zero, div, submul};
}

}  // namespace detail

/// Rank of an integer matrix read over the given field.
inline std::size_t rank(const Matrix& m, std::size_t cols, FieldTag field) {
    if (field.is_rational()) {
        auto q = detail::to_rational(m, cols);
        auto [z, d, s] = detail::rational_ops();
        return detail::rref(q, cols, z, d, s).size();
    }
    auto q = detail::to_modular(m, cols, field);
    auto [z, d, s] = detail::modular_ops(field.prime());
    return detail::rref(q, cols, z, d, s).size();
}

/// Basis of the right kernel {v : m v = 0} in canonical form: the standard
/// RREF basis (one vector per free column, ascending), scaled to primitive
/// integers over Q and reduced into [0, p) over F_p.
inline std::vector<std::vector<BigInt>> kernel(const Matrix& m, std::size_t cols, FieldTag field) {
    std::vector<std::vector<BigInt>> out;
    if (field.is_rational()) {
        auto q = detail::to_rational(m, cols);
        auto [z, d, s] = detail::rational_ops();
        const auto piv = detail::rref(q, cols, z, d, s);
        for (auto& v : detail::null_basis_from_rref<Rational>(q, cols, piv, Rational(1), Rational(0))) {
            BigInt l = 1;
            for (const auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
            std::vector<BigInt> w;
            BigInt g = 0;
            for (const auto& x : v) {
                w.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
                g = boost::multiprecision::gcd(g, w.back());
            }
            for (auto& x : w) x /= g;
            out.push_back(std::move(w));
        }
    } else {
        const std::int64_t p = field.prime();
        auto q = detail::to_modular(m, cols, field);
        auto [z, d, s] = detail::modular_ops(p);
        const auto piv = detail::rref(q, cols, z, d, s);
        for (auto& v : detail::null_basis_from_rref<std::int64_t>(q, cols, piv, 1, 0)) {
            std::vector<BigInt> w;
            for (auto x : v) w.push_back(((x % p) + p) % p);
            out.push_back(std::move(w));
        }
    }
    return out;
}

inline BigInt det3(std::span<const BigInt> a, std::span<const BigInt> b, std::span<const BigInt> c) {
    return dot(a, cross(b, c));
}

}  // namespace cubic_mw::linalg

#endif
