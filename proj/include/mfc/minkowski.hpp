#pragma once

#include <array>
#include <cmath>
#include <string>

#include "mfc/hyperbolic.hpp"

namespace mfc {

/// Vector in R^3_1, signature (-,+,+): the x1 axis is the timelike one.
struct Vec3 {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;

    friend constexpr Vec3 operator+(Vec3 v, Vec3 w) { return {v.x1 + w.x1, v.x2 + w.x2, v.x3 + w.x3}; }
    friend constexpr Vec3 operator-(Vec3 v, Vec3 w) { return {v.x1 - w.x1, v.x2 - w.x2, v.x3 - w.x3}; }
    friend constexpr Vec3 operator-(Vec3 v) { return {-v.x1, -v.x2, -v.x3}; }
    friend constexpr Vec3 operator*(double c, Vec3 v) { return {c * v.x1, c * v.x2, c * v.x3}; }
    friend constexpr Vec3 operator*(Vec3 v, double c) { return c * v; }

    constexpr double operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
    double& operator[](int i) { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
};

/// Lorentzian inner product -v1*w1 + v2*w2 + v3*w3.
constexpr double inner(Vec3 v, Vec3 w) { return -v.x1 * w.x1 + v.x2 * w.x2 + v.x3 * w.x3; }

/// Lorentzian vector product: cofactor expansion of the determinant with
/// first row (-e1, e2, e3).
constexpr Vec3 cross(Vec3 v, Vec3 w) {
    return {-(v.x2 * w.x3 - v.x3 * w.x2),
            -(v.x1 * w.x3 - v.x3 * w.x1),
            v.x1 * w.x2 - v.x2 * w.x1};
}

inline double norm(Vec3 v) { return std::sqrt(std::abs(inner(v, v))); }

inline double abs_max(Vec3 v) {
    return std::max({std::abs(v.x1), std::abs(v.x2), std::abs(v.x3)});
}

enum class CausalClass { Spacelike, Timelike, Null };

inline const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "spacelike";
        case CausalClass::Timelike: return "timelike";
        default: return "null";
    }
}

/// Default tolerance for classifying numerically computed vectors.
inline constexpr double kCausalTol = 1e-9;

inline CausalClass causal_character(Vec3 v, double tol = kCausalTol) {
    const double q = inner(v, v);
    if (q > tol) return CausalClass::Spacelike;
    if (q < -tol) return CausalClass::Timelike;
    return CausalClass::Null;
}

/// v in S^2_1 (de Sitter 2-space): unit spacelike.
inline bool in_de_sitter(Vec3 v, double tol = kCausalTol) { return std::abs(inner(v, v) - 1.0) <= tol; }
/// v in H^2_0 (hyperbolic 2-space): unit timelike.
inline bool in_hyperbolic2(Vec3 v, double tol = kCausalTol) { return std::abs(inner(v, v) + 1.0) <= tol; }

/// Hyperbolic-valued 3-vector a + j b; real and j parts are each a Vec3.
struct HVec3 {
    HyperbolicNumber c1, c2, c3;

    constexpr HyperbolicNumber operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }

    constexpr Vec3 real() const { return {c1.a, c2.a, c3.a}; }
    constexpr Vec3 imag() const { return {c1.b, c2.b, c3.b}; }

    static constexpr HVec3 pack(Vec3 re, Vec3 im) {
        return {{re.x1, im.x1}, {re.x2, im.x2}, {re.x3, im.x3}};
    }
};

/// <hv,hv> for hv = a + jb expands to (⟨a,a⟩+⟨b,b⟩) + 2j⟨a,b⟩ since j^2 = 1;
/// hv is isotropic iff both returned defects vanish.
struct IsotropyDefect {
    double d1;  // <a,a> + <b,b>
    double d2;  // <a,b>
};

inline IsotropyDefect isotropy_defect(const HVec3& hv) {
    const Vec3 a = hv.real(), b = hv.imag();
    return {inner(a, a) + inner(b, b), inner(a, b)};
}

/// Labeled orthonormal moving frame of a framed curve.
struct Triad {
    Vec3 mu, nu1, nu2;
};

/// CSV fragment "x1,x2,x3" with shortest round-trip decimals.
inline std::string csv_fields(Vec3 v) {
    return format_double(v.x1) + "," + format_double(v.x2) + "," + format_double(v.x3);
}

}  // namespace mfc
