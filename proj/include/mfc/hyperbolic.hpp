#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mfc {

/// Base class for every structured error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

struct DivisionByNullDivisor : Error {
    DivisionByNullDivisor() : Error("hyperbolic division by a null divisor (|a| == |b|)") {}
};

struct NotRepresentable : Error {
    double u, v;
    NotRepresentable(double u_, double v_)
        : Error("hyperbolic square root not representable: null coordinates (u=" +
                format_double(u_) + ", v=" + format_double(v_) + ") must both be >= 0"),
          u(u_), v(v_) {}
};

/// Split-complex scalar a + jb with j^2 = +1.
///
/// The null (idempotent) coordinates u = a+b, v = a-b diagonalise the ring:
/// multiplication acts coordinate-wise on (u, v), which is what makes the
/// square-root branch structure explicit (see sqrt_h).
struct HyperbolicNumber {
    double a = 0.0;  // real part
    double b = 0.0;  // j part

    constexpr HyperbolicNumber() = default;
    constexpr HyperbolicNumber(double a_, double b_) : a(a_), b(b_) {}

    friend constexpr HyperbolicNumber operator+(HyperbolicNumber x, HyperbolicNumber y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend constexpr HyperbolicNumber operator-(HyperbolicNumber x, HyperbolicNumber y) {
        return {x.a - y.a, x.b - y.b};
    }
    friend constexpr HyperbolicNumber operator-(HyperbolicNumber x) { return {-x.a, -x.b}; }

    friend HyperbolicNumber operator*(HyperbolicNumber x, HyperbolicNumber y) {
        return {std::fma(x.a, y.a, x.b * y.b), std::fma(x.a, y.b, x.b * y.a)};
    }
    friend constexpr HyperbolicNumber operator*(double c, HyperbolicNumber x) {
        return {c * x.a, c * x.b};
    }
    friend constexpr HyperbolicNumber operator*(HyperbolicNumber x, double c) { return c * x; }

    HyperbolicNumber& operator+=(HyperbolicNumber y) { return *this = *this + y; }
    HyperbolicNumber& operator-=(HyperbolicNumber y) { return *this = *this - y; }
    HyperbolicNumber& operator*=(HyperbolicNumber y) { return *this = *this * y; }
};

constexpr HyperbolicNumber conj(HyperbolicNumber h) { return {h.a, -h.b}; }

/// a^2 - b^2 = h * conj(h) (real part; the j part vanishes identically).
inline double modulus_sq(HyperbolicNumber h) { return (h.a - h.b) * (h.a + h.b); }

constexpr double null_u(HyperbolicNumber h) { return h.a + h.b; }
constexpr double null_v(HyperbolicNumber h) { return h.a - h.b; }
constexpr HyperbolicNumber from_null(double u, double v) { return {(u + v) / 2.0, (u - v) / 2.0}; }

inline HyperbolicNumber operator/(HyperbolicNumber x, HyperbolicNumber y) {
    const double m = modulus_sq(y);
    if (m == 0.0) throw DivisionByNullDivisor{};
    const HyperbolicNumber n = x * conj(y);
    return {n.a / m, n.b / m};
}
inline HyperbolicNumber operator/(HyperbolicNumber x, double c) { return {x.a / c, x.b / c}; }

/// Euler formula for the hyperbolic rotation: cosh(t) + j sinh(t).
inline HyperbolicNumber exp_j(double theta) { return {std::cosh(theta), std::sinh(theta)}; }

/// Principal square root, taken coordinate-wise in the null basis.
/// Defined exactly when both null coordinates are non-negative; the caller
/// owns the global +- (and, where needed, the j-sector) choice.
inline HyperbolicNumber sqrt_h(HyperbolicNumber h) {
    const double u = null_u(h), v = null_v(h);
    if (u < 0.0 || v < 0.0) throw NotRepresentable(u, v);
    return from_null(std::sqrt(u), std::sqrt(v));
}

inline double abs_max(HyperbolicNumber h) { return std::max(std::abs(h.a), std::abs(h.b)); }

/// Renders "a+bj" with shortest round-trip decimals, e.g. "1.5+0.25j", "-2-3j".
inline std::string to_string(HyperbolicNumber h) {
    std::string s = format_double(h.a);
    s += (h.b < 0.0 || (h.b == 0.0 && std::signbit(h.b))) ? "" : "+";
    s += format_double(h.b);
    s += 'j';
    return s;
}

}  // namespace mfc
