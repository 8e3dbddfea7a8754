#pragma once

#include <array>
#include <cmath>
#include <string>

#include "mfc/framed_curve.hpp"
#include "mfc/hyperbolic.hpp"
#include "mfc/minkowski.hpp"

namespace mfc {

/// Two hyperbolic components; the carrier of the frame correspondence.
struct HSpinor {
    HyperbolicNumber c1, c2;

    friend constexpr HSpinor operator+(const HSpinor& x, const HSpinor& y) {
        return {x.c1 + y.c1, x.c2 + y.c2};
    }
    friend constexpr HSpinor operator-(const HSpinor& x, const HSpinor& y) {
        return {x.c1 - y.c1, x.c2 - y.c2};
    }
    friend constexpr HSpinor operator-(const HSpinor& x) { return {-x.c1, -x.c2}; }
    friend HSpinor operator*(HyperbolicNumber r, const HSpinor& x) { return {r * x.c1, r * x.c2}; }
    friend HSpinor operator*(double r, const HSpinor& x) { return {r * x.c1, r * x.c2}; }
};

/// The mate (-conj(c2), conj(c1)); mate(mate(phi)) = -phi.
inline HSpinor mate(const HSpinor& phi) { return {-conj(phi.c2), conj(phi.c1)}; }

/// conj(phi)^t phi = |c1|^2 + |c2|^2 — real, preserved by every flow here.
inline double spinor_norm(const HSpinor& phi) { return modulus_sq(phi.c1) + modulus_sq(phi.c2); }

inline double distance(const HSpinor& x, const HSpinor& y) {
    return std::max(abs_max(x.c1 - y.c1), abs_max(x.c2 - y.c2));
}

inline double abs_max(const HVec3& v) {
    return std::max({abs_max(v.c1), abs_max(v.c2), abs_max(v.c3)});
}

/// The three symmetric matrices of the correspondence, as 2x2 arrays.
inline std::array<std::array<HyperbolicNumber, 2>, 2> sigma(int i) {
    const HyperbolicNumber o{1, 0}, j{0, 1}, z{0, 0};
    switch (i) {
        case 1: return {{{o, z}, {z, -o}}};
        case 2: return {{{j, z}, {z, j}}};
        default: return {{{z, -o}, {-o, z}}};
    }
}

/// Component i of eta^t sigma_i phi, by direct expansion:
///   (e1 p1 - e2 p2,  j (e1 p1 + e2 p2),  -(e1 p2 + e2 p1)).
/// Symmetric in its arguments.
inline HVec3 bilinear(const HSpinor& eta, const HSpinor& phi) {
    const HyperbolicNumber j{0, 1};
    const HyperbolicNumber a = eta.c1 * phi.c1, b = eta.c2 * phi.c2;
    return {a - b, j * (a + b), -(eta.c1 * phi.c2 + eta.c2 * phi.c1)};
}

struct NotNormalized : Error {
    double norm;
    explicit NotNormalized(double n)
        : Error("spinor norm " + format_double(n) + " is not +-1"), norm(n) {}
};

struct ComponentNotRepresentable : Error {
    int component;  // 1 or 2
    double u, v;
    ComponentNotRepresentable(int comp, double u_, double v_)
        : Error("spinor component " + std::to_string(comp) + " not representable: radicand null coordinates (u=" +
                format_double(u_) + ", v=" + format_double(v_) + ") must both be >= 0"),
          component(comp), u(u_), v(v_) {}
};

struct SignInconsistent : Error {
    double theta3_defect, mate_defect;
    SignInconsistent(double t3, double mv)
        : Error("no sign/sector assignment reproduces the triad (theta3 defect " + format_double(t3) +
                ", mate-vector defect " + format_double(mv) + ")"),
          theta3_defect(t3), mate_defect(mv) {}
};

enum class SpinorBranch { Plus, Minus };

namespace detail {

/// -mate(phi)^t sigma phi, reduced: with w = c1 conj(c2),
/// (w + conj(w), j(w - conj(w)), |c1|^2 - |c2|^2) = (2 Re w, 2 Im w, ...).
inline Vec3 mate_vector(const HSpinor& phi) {
    const HyperbolicNumber w = phi.c1 * conj(phi.c2);
    return {2.0 * w.a, 2.0 * w.b, modulus_sq(phi.c1) - modulus_sq(phi.c2)};
}

}  // namespace detail

/// Reconstructs the labeled frame triad represented by phi.
///
/// Spacelike: nu1 + j nu2 = phi^t sigma phi, mu = -mate(phi)^t sigma phi.
/// Timelike:  nu1 + j mu  = phi^t sigma phi, nu2 = -mate(phi)^t sigma phi
/// (the j slot carries the timelike vector of the pair, exactly as the
/// spacelike packing puts the opposite causal character in the j slot; this
/// is the assignment under which the six spinor flows track the six frame
/// flows — see the flow consistency tests).
///
/// phi and -phi give the same triad. Accepts conj(phi)^t phi = -1 as well:
/// that class is j * (unit spinors) and carries the mate-vector-flipped
/// triads.
inline Triad frame_from_spinor(const HSpinor& phi, CurveCharacter character, double tol = 1e-9) {
    const double n = spinor_norm(phi);
    if (std::abs(std::abs(n) - 1.0) > tol) throw NotNormalized(n);
    const HVec3 theta = bilinear(phi, phi);
    const Vec3 c = detail::mate_vector(phi);
    Triad t;
    if (character == CurveCharacter::Spacelike) {
        t.nu1 = theta.real();
        t.nu2 = theta.imag();
        t.mu = c;
    } else {
        t.nu1 = theta.real();
        t.mu = theta.imag();
        t.nu2 = c;
    }
    return t;
}

/// Inverts frame_from_spinor on its image, two-to-one.
///
/// phi1, phi2 are recovered from the principal square roots of
/// (theta1 + j theta2)/2 and (-theta1 + j theta2)/2; every invertible
/// hyperbolic number is (+-1) or (+-j) times a principal root, so the search
/// runs over those sectors and keeps the assignment that reproduces both
/// theta3 = -2 phi1 phi2 and the mate vector. The remaining two-fold
/// ambiguity is resolved by `branch`.
inline HSpinor spinor_from_frame(const Triad& triad, CurveCharacter character,
                                 SpinorBranch branch = SpinorBranch::Plus, double tol = 1e-9) {
    const HyperbolicNumber j{0, 1};
    HVec3 theta;
    Vec3 cv;
    if (character == CurveCharacter::Spacelike) {
        theta = HVec3::pack(triad.nu1, triad.nu2);
        cv = triad.mu;
    } else {
        theta = HVec3::pack(triad.nu1, triad.mu);
        cv = triad.nu2;
    }

    const HyperbolicNumber u1 = 0.5 * (theta.c1 + j * theta.c2);
    const HyperbolicNumber u2 = 0.5 * (j * theta.c2 - theta.c1);
    HyperbolicNumber r1, r2;
    try {
        r1 = sqrt_h(u1);
    } catch (const NotRepresentable& e) {
        throw ComponentNotRepresentable(1, e.u, e.v);
    }
    try {
        r2 = sqrt_h(u2);
    } catch (const NotRepresentable& e) {
        throw ComponentNotRepresentable(2, e.u, e.v);
    }

    const auto jmul = [](HyperbolicNumber h) { return HyperbolicNumber{h.b, h.a}; };
    const HyperbolicNumber cand1[2] = {r1, jmul(r1)};
    const HyperbolicNumber cand2[4] = {r2, -r2, jmul(r2), -jmul(r2)};

    double best_t3 = std::numeric_limits<double>::infinity();
    double best_mate = std::numeric_limits<double>::infinity();
    for (const auto& p1 : cand1) {
        for (const auto& p2 : cand2) {
            const HSpinor phi{p1, p2};
            const double d3 = abs_max(-2.0 * (p1 * p2) - theta.c3);
            const double dm = abs_max(detail::mate_vector(phi) - cv);
            if (d3 <= tol && dm <= tol)
                return branch == SpinorBranch::Plus ? phi : -phi;
            if (d3 < best_t3) { best_t3 = d3; best_mate = dm; }
        }
    }
    throw SignInconsistent(best_t3, best_mate);
}

}  // namespace mfc
