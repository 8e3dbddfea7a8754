#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "mfc/expr.hpp"
#include "mfc/minkowski.hpp"

namespace mfc {

enum class CurveCharacter { Spacelike, Timelike };

inline const char* to_string(CurveCharacter c) {
    return c == CurveCharacter::Spacelike ? "spacelike" : "timelike";
}

/// A curve gamma with normal fields (nu1, nu2), all given componentwise as
/// expressions in s over [s_min, s_max]. mu and the curvatures are derived.
struct FramedCurveSpec {
    CurveCharacter character = CurveCharacter::Spacelike;
    std::array<Expr, 3> gamma, nu1, nu2;
    double s_min = 0.0, s_max = 1.0;
};

struct FrameSample {
    double s = 0.0;
    Vec3 gamma, mu, nu1, nu2;
    int delta = 1;        // sign<nu1,nu1> (spacelike pattern; +1 for timelike)
    int orientation = 1;  // epsilon with mu = epsilon * cross(nu1, nu2)
};

struct CurvatureTuple {
    double l1 = 0.0, l2 = 0.0, l3 = 0.0, alpha = 0.0;
};

struct NotAFramedCurve : Error {
    std::string condition;
    double s, defect;
    NotAFramedCurve(std::string cond, double s_, double defect_)
        : Error("not a framed curve: " + cond + " fails at s=" + format_double(s_) +
                " (defect " + format_double(defect_) + ")"),
          condition(std::move(cond)), s(s_), defect(defect_) {}
};

struct SingularPointError : Error {
    double s;
    explicit SingularPointError(double s_)
        : Error("curve is singular at s=" + format_double(s_)), s(s_) {}
};

struct DegenerateCurvature : Error {
    double s;
    explicit DegenerateCurvature(double s_)
        : Error("gamma' x gamma'' is null at s=" + format_double(s_)), s(s_) {}
};

struct GramDrift : Error {
    double s, defect;
    GramDrift(double s_, double defect_)
        : Error("frame propagation Gram drift " + format_double(defect_) + " at s=" + format_double(s_)),
          s(s_), defect(defect_) {}
};

// --------------------------------------------------------------------------
// Jet-valued vectors: each component carries value and three derivatives.
// --------------------------------------------------------------------------

struct JetVec3 {
    Jet3 c1, c2, c3;

    Vec3 value() const { return {c1.v, c2.v, c3.v}; }
    Vec3 deriv1() const { return {c1.d1, c2.d1, c3.d1}; }
    Vec3 deriv2() const { return {c1.d2, c2.d2, c3.d2}; }
    Vec3 deriv3() const { return {c1.d3, c2.d3, c3.d3}; }
};

inline JetVec3 eval_jets(const std::array<Expr, 3>& comps, double s) {
    return {eval_jet(comps[0], s), eval_jet(comps[1], s), eval_jet(comps[2], s)};
}

inline Jet3 inner(const JetVec3& v, const JetVec3& w) {
    return -(v.c1 * w.c1) + v.c2 * w.c2 + v.c3 * w.c3;
}

inline JetVec3 cross(const JetVec3& v, const JetVec3& w) {
    return {-(v.c2 * w.c3 - v.c3 * w.c2), -(v.c1 * w.c3 - v.c3 * w.c1), v.c1 * w.c2 - v.c2 * w.c1};
}

inline JetVec3 operator*(double c, const JetVec3& v) { return {c * v.c1, c * v.c2, c * v.c3}; }

namespace detail {

struct FrameJets {
    JetVec3 gamma, nu1, nu2, mu;  // mu already carries the orientation sign
    int delta = 1;
    int orientation = 1;
};

inline FrameJets frame_jets(const FramedCurveSpec& spec, double s) {
    FrameJets f;
    f.gamma = eval_jets(spec.gamma, s);
    f.nu1 = eval_jets(spec.nu1, s);
    f.nu2 = eval_jets(spec.nu2, s);
    JetVec3 c = cross(f.nu1, f.nu2);
    if (spec.character == CurveCharacter::Timelike) {
        // mu is timelike; normalise it future-pointing (x1 > 0).
        f.orientation = c.c1.v > 0.0 ? 1 : -1;
    }
    f.mu = f.orientation == 1 ? c : (-1.0) * c;
    if (spec.character == CurveCharacter::Spacelike)
        f.delta = inner(f.nu1, f.nu1).v >= 0.0 ? 1 : -1;
    return f;
}

}  // namespace detail

inline FrameSample frame_at(const FramedCurveSpec& spec, double s) {
    const auto f = detail::frame_jets(spec, s);
    return {s, f.gamma.value(), f.mu.value(), f.nu1.value(), f.nu2.value(), f.delta, f.orientation};
}

/// Curvatures and their first derivatives (jets truncated to order 1), used
/// where the Frenet-type angle rate is needed.
struct CurvatureJets {
    Jet3 l1, l2, l3, alpha;
    int delta = 1;
    int orientation = 1;

    CurvatureTuple value() const { return {l1.v, l2.v, l3.v, alpha.v}; }
};

/// Spacelike: l2 = <nu1',mu>, l3 = <nu2',mu>, l1 = -delta<nu1',nu2>,
/// alpha = <gamma',mu>. The l1 sign is fixed by the frame equations
/// nu1' = l2 mu + l1 nu2, nu2' = l3 mu + l1 nu1 (with <nu2,nu2> = -delta),
/// which is the convention every adapted-frame and spinor formula relies on.
/// Timelike: l1 = <nu1',nu2>, l2 = -<nu1',mu>, l3 = -<nu2',mu>,
/// alpha = -<gamma',mu>.
inline CurvatureJets curvature_jets(const FramedCurveSpec& spec, double s) {
    const auto f = detail::frame_jets(spec, s);

    // Shift one derivative slot down: jets of nu' to order 2.
    const auto shift = [](const JetVec3& v) {
        const auto sh = [](Jet3 j) { return Jet3{j.d1, j.d2, j.d3, 0.0}; };
        return JetVec3{sh(v.c1), sh(v.c2), sh(v.c3)};
    };
    const JetVec3 n1p = shift(f.nu1), n2p = shift(f.nu2), gp = shift(f.gamma);

    CurvatureJets out;
    out.delta = f.delta;
    out.orientation = f.orientation;
    if (spec.character == CurveCharacter::Spacelike) {
        out.l1 = -static_cast<double>(f.delta) * inner(n1p, f.nu2);
        out.l2 = inner(n1p, f.mu);
        out.l3 = inner(n2p, f.mu);
        out.alpha = inner(gp, f.mu);
    } else {
        out.l1 = inner(n1p, f.nu2);
        out.l2 = -1.0 * inner(n1p, f.mu);
        out.l3 = -1.0 * inner(n2p, f.mu);
        out.alpha = -1.0 * inner(gp, f.mu);
    }
    return out;
}

inline CurvatureTuple curvatures_at(const FramedCurveSpec& spec, double s) {
    return curvature_jets(spec, s).value();
}

// --------------------------------------------------------------------------
// Framed-curve validation.
// --------------------------------------------------------------------------

struct ValidationReport {
    bool pass = true;
    std::string failing_condition;
    double failing_s = 0.0;
    double max_orthogonality_defect = 0.0;  // <gamma',nu_i>
    double max_gram_defect = 0.0;           // unit lengths and pairwise products
    double max_speed_defect = 0.0;          // gamma' - alpha mu
    int delta = 1;
    int orientation = 1;
    CausalClass nu1_class = CausalClass::Spacelike;
    CausalClass nu2_class = CausalClass::Spacelike;
};

namespace detail {

inline void track(ValidationReport& r, double& bucket, const char* cond, double s, double defect, double tol) {
    bucket = std::max(bucket, defect);
    if (defect > tol && r.pass) {
        r.pass = false;
        r.failing_condition = cond;
        r.failing_s = s;
    }
}

}  // namespace detail

/// Non-throwing variant of validate_framed; reports the worst defects.
inline ValidationReport probe_framed(const FramedCurveSpec& spec, int grid_n, double tol) {
    ValidationReport r;
    if (grid_n < 2) {
        r.pass = false;
        r.failing_condition = "grid_n >= 2";
        return r;
    }
    bool first = true;
    for (int i = 0; i < grid_n; ++i) {
        const double s = spec.s_min + (spec.s_max - spec.s_min) * i / (grid_n - 1);
        const auto f = detail::frame_jets(spec, s);
        const Vec3 gp = f.gamma.deriv1();
        const Vec3 n1 = f.nu1.value(), n2 = f.nu2.value(), mu = f.mu.value();

        detail::track(r, r.max_orthogonality_defect, "<gamma',nu1> = 0", s, std::abs(inner(gp, n1)), tol);
        detail::track(r, r.max_orthogonality_defect, "<gamma',nu2> = 0", s, std::abs(inner(gp, n2)), tol);
        detail::track(r, r.max_gram_defect, "<nu1,nu2> = 0", s, std::abs(inner(n1, n2)), tol);

        if (first) {
            r.delta = f.delta;
            r.orientation = f.orientation;
            r.nu1_class = causal_character(n1, 0.5);
            r.nu2_class = causal_character(n2, 0.5);
            first = false;
        } else if (f.orientation != r.orientation) {
            detail::track(r, r.max_gram_defect, "orientation sign constant", s, 1.0, tol);
        }

        if (spec.character == CurveCharacter::Spacelike) {
            if (f.delta != r.delta) detail::track(r, r.max_gram_defect, "delta sign constant", s, 1.0, tol);
            const double d = r.delta;
            detail::track(r, r.max_gram_defect, "nu1 in S/H (unit)", s, std::abs(inner(n1, n1) - d), tol);
            detail::track(r, r.max_gram_defect, "nu2 in H/S (unit)", s, std::abs(inner(n2, n2) + d), tol);
            detail::track(r, r.max_gram_defect, "mu spacelike unit", s, std::abs(inner(mu, mu) - 1.0), tol);
        } else {
            detail::track(r, r.max_gram_defect, "nu1 in S^2_1", s, std::abs(inner(n1, n1) - 1.0), tol);
            detail::track(r, r.max_gram_defect, "nu2 in S^2_1", s, std::abs(inner(n2, n2) - 1.0), tol);
            detail::track(r, r.max_gram_defect, "mu in H^2_0", s, std::abs(inner(mu, mu) + 1.0), tol);
        }

        // gamma' = alpha mu with alpha extracted per character.
        const double alpha = spec.character == CurveCharacter::Spacelike ? inner(gp, mu) : -inner(gp, mu);
        detail::track(r, r.max_speed_defect, "gamma' = alpha mu", s, abs_max(gp - alpha * mu), tol);
    }
    return r;
}

inline ValidationReport validate_framed(const FramedCurveSpec& spec, int grid_n, double tol) {
    ValidationReport r = probe_framed(spec, grid_n, tol);
    if (!r.pass) {
        const double worst = std::max({r.max_orthogonality_defect, r.max_gram_defect, r.max_speed_defect});
        throw NotAFramedCurve(r.failing_condition, r.failing_s, worst);
    }
    return r;
}

// --------------------------------------------------------------------------
// Singular points: zeros of alpha.
// --------------------------------------------------------------------------

inline std::vector<double> singular_points(const FramedCurveSpec& spec, int grid_n, double tol = 1e-10) {
    std::vector<double> roots;
    if (grid_n < 2) return roots;
    const auto alpha = [&](double s) { return curvatures_at(spec, s).alpha; };

    std::vector<double> ss(grid_n), av(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        ss[i] = spec.s_min + (spec.s_max - spec.s_min) * i / (grid_n - 1);
        av[i] = alpha(ss[i]);
        if (std::abs(av[i]) <= tol) roots.push_back(ss[i]);
    }

    const auto bisect = [&](double lo, double hi, double flo) {
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = alpha(mid);
            if (std::abs(fm) <= tol || hi - lo < 1e-15 * std::max(1.0, std::abs(mid))) return mid;
            if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
        }
        return 0.5 * (lo + hi);
    };

    for (int i = 0; i + 1 < grid_n; ++i) {
        if (std::abs(av[i]) <= tol || std::abs(av[i + 1]) <= tol) continue;
        if ((av[i] < 0.0) != (av[i + 1] < 0.0)) roots.push_back(bisect(ss[i], ss[i + 1], av[i]));
    }

    // Even-multiplicity zeros show up as interior minima of |alpha| rather
    // than sign changes; refine those and keep them only if |alpha| really
    // reaches tol.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 1; i + 1 < grid_n; ++i) {
        if (std::abs(av[i]) <= tol) continue;
        if (std::abs(av[i]) >= std::abs(av[i - 1]) || std::abs(av[i]) >= std::abs(av[i + 1])) continue;
        double a = ss[i - 1], b = ss[i + 1];
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = std::abs(alpha(x1)), f2 = std::abs(alpha(x2));
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = std::abs(alpha(x1)); }
            else { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = std::abs(alpha(x2)); }
        }
        const double m = 0.5 * (a + b);
        if (std::abs(alpha(m)) <= tol) roots.push_back(m);
    }

    std::sort(roots.begin(), roots.end());
    const double merge = 1e-8 * std::max(1.0, spec.s_max - spec.s_min);
    std::vector<double> out;
    for (double rt : roots)
        if (out.empty() || rt - out.back() > merge) out.push_back(rt);
    return out;
}

// --------------------------------------------------------------------------
// Frame ODE kinds and propagation.
// --------------------------------------------------------------------------

enum class FrameOdeKind {
    SpacelikeGeneral,
    TimelikeGeneral,
    SpacelikeBishop,
    SpacelikeFrenet,
    TimelikeBishop,
    TimelikeFrenet,
};

inline const char* to_string(FrameOdeKind k) {
    switch (k) {
        case FrameOdeKind::SpacelikeGeneral: return "spacelike-general";
        case FrameOdeKind::TimelikeGeneral: return "timelike-general";
        case FrameOdeKind::SpacelikeBishop: return "spacelike-bishop";
        case FrameOdeKind::SpacelikeFrenet: return "spacelike-frenet";
        case FrameOdeKind::TimelikeBishop: return "timelike-bishop";
        default: return "timelike-frenet";
    }
}

struct GeneralCurvatures { double l1 = 0.0, l2 = 0.0, l3 = 0.0; };
struct BishopCurvatures { double l2b = 0.0, l3b = 0.0; };
struct FrenetCurvatures { double p = 0.0, q = 0.0; };

using FrameCurvatures = std::variant<GeneralCurvatures, BishopCurvatures, FrenetCurvatures>;
using CurvatureFn = std::function<FrameCurvatures(double)>;

struct KindPayloadMismatch : Error {
    explicit KindPayloadMismatch(FrameOdeKind k)
        : Error(std::string("curvature payload does not match ODE kind ") + to_string(k)) {}
};

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Coefficient matrix M of the kind's frame equations, rows ordered
/// (mu, nu1, nu2): d/ds (mu; nu1; nu2) = M (mu; nu1; nu2).
inline Mat3 kind_matrix(FrameOdeKind kind, const FrameCurvatures& cv, double delta = 1.0) {
    const double d = delta;
    switch (kind) {
        case FrameOdeKind::SpacelikeGeneral: {
            const auto* g = std::get_if<GeneralCurvatures>(&cv);
            if (!g) throw KindPayloadMismatch(kind);
            return {{{0.0, -d * g->l2, d * g->l3}, {g->l2, 0.0, g->l1}, {g->l3, g->l1, 0.0}}};
        }
        case FrameOdeKind::TimelikeGeneral: {
            const auto* g = std::get_if<GeneralCurvatures>(&cv);
            if (!g) throw KindPayloadMismatch(kind);
            return {{{0.0, g->l2, g->l3}, {g->l2, 0.0, g->l1}, {g->l3, -g->l1, 0.0}}};
        }
        case FrameOdeKind::SpacelikeBishop: {
            const auto* b = std::get_if<BishopCurvatures>(&cv);
            if (!b) throw KindPayloadMismatch(kind);
            return {{{0.0, -d * b->l2b, d * b->l3b}, {b->l2b, 0.0, 0.0}, {b->l3b, 0.0, 0.0}}};
        }
        case FrameOdeKind::TimelikeBishop: {
            const auto* b = std::get_if<BishopCurvatures>(&cv);
            if (!b) throw KindPayloadMismatch(kind);
            return {{{0.0, b->l2b, b->l3b}, {b->l2b, 0.0, 0.0}, {b->l3b, 0.0, 0.0}}};
        }
        case FrameOdeKind::SpacelikeFrenet: {
            const auto* f = std::get_if<FrenetCurvatures>(&cv);
            if (!f) throw KindPayloadMismatch(kind);
            return {{{0.0, -d * f->p, 0.0}, {f->p, 0.0, f->q}, {0.0, f->q, 0.0}}};
        }
        case FrameOdeKind::TimelikeFrenet: {
            const auto* f = std::get_if<FrenetCurvatures>(&cv);
            if (!f) throw KindPayloadMismatch(kind);
            return {{{0.0, f->p, 0.0}, {f->p, 0.0, f->q}, {0.0, -f->q, 0.0}}};
        }
    }
    throw KindPayloadMismatch(kind);
}

inline bool is_timelike_kind(FrameOdeKind k) {
    return k == FrameOdeKind::TimelikeGeneral || k == FrameOdeKind::TimelikeBishop ||
           k == FrameOdeKind::TimelikeFrenet;
}

struct FrameFlowSample {
    double s = 0.0;
    Triad frame;
    double gram_defect = 0.0;
};

namespace detail {

using Frame9 = std::array<Vec3, 3>;  // rows mu, nu1, nu2

inline Frame9 apply(const Mat3& m, const Frame9& f) {
    Frame9 out;
    for (int i = 0; i < 3; ++i)
        out[i] = m[i][0] * f[0] + m[i][1] * f[1] + m[i][2] * f[2];
    return out;
}

inline Frame9 axpy(const Frame9& f, double h, const Frame9& k) {
    return {f[0] + h * k[0], f[1] + h * k[1], f[2] + h * k[2]};
}

/// Conserved completeness form F^t G F for G = diag(pattern); equals Gram
/// preservation on pattern-orthonormal initial frames and stays conserved
/// for arbitrary (e.g. spinor-image) initial data.
inline std::array<double, 6> completeness(const Frame9& f, const std::array<double, 3>& g) {
    std::array<double, 6> c{};
    int k = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            double sum = 0.0;
            for (int i = 0; i < 3; ++i) sum += g[i] * f[i][a] * f[i][b];
            c[k++] = sum;
        }
    return c;
}

}  // namespace detail

/// Classic fixed-step 4th-order integration of the 9-dimensional linear frame
/// system; one step per consecutive grid pair. Throws GramDrift if the
/// conserved form drifts by more than 1e-6.
inline std::vector<FrameFlowSample> propagate_frame(FrameOdeKind kind, const CurvatureFn& curv,
                                                    const Triad& init, const std::vector<double>& grid,
                                                    double delta = 1.0) {
    std::vector<FrameFlowSample> out;
    if (grid.empty()) return out;

    detail::Frame9 f = {init.mu, init.nu1, init.nu2};
    const std::array<double, 3> pattern =
        is_timelike_kind(kind) ? std::array<double, 3>{-1.0, 1.0, 1.0}
                               : std::array<double, 3>{1.0, delta, -delta};
    const auto c0 = detail::completeness(f, pattern);

    const auto defect_of = [&](const detail::Frame9& fr) {
        const auto c = detail::completeness(fr, pattern);
        double d = 0.0;
        for (int i = 0; i < 6; ++i) d = std::max(d, std::abs(c[i] - c0[i]));
        return d;
    };

    out.push_back({grid[0], {f[0], f[1], f[2]}, 0.0});
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double s = grid[i], h = grid[i + 1] - s;
        const auto m1 = kind_matrix(kind, curv(s), delta);
        const auto m2 = kind_matrix(kind, curv(s + h / 2), delta);
        const auto m4 = kind_matrix(kind, curv(s + h), delta);
        const auto k1 = detail::apply(m1, f);
        const auto k2 = detail::apply(m2, detail::axpy(f, h / 2, k1));
        const auto k3 = detail::apply(m2, detail::axpy(f, h / 2, k2));
        const auto k4 = detail::apply(m4, detail::axpy(f, h, k3));
        for (int r = 0; r < 3; ++r)
            f[r] = f[r] + (h / 6.0) * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]);
        const double defect = defect_of(f);
        if (defect > 1e-6) throw GramDrift(grid[i + 1], defect);
        out.push_back({grid[i + 1], {f[0], f[1], f[2]}, defect});
    }
    return out;
}

// --------------------------------------------------------------------------
// Independent kappa/tau route from gamma derivatives alone.
// --------------------------------------------------------------------------

struct KappaTau {
    double kappa = 0.0, tau = 0.0;
};

/// kappa = ||g' x g''|| / ||g'||^3, tau = det(g',g'',g''') / ||g' x g''||^2,
/// with Lorentzian cross product and norms.
inline KappaTau frenet_kappa_tau(const std::array<Expr, 3>& gamma, double s, double tol = 1e-9) {
    const JetVec3 g = eval_jets(gamma, s);
    const Vec3 g1 = g.deriv1(), g2 = g.deriv2(), g3 = g.deriv3();
    const double speed = norm(g1);
    if (speed <= tol) throw SingularPointError(s);
    const Vec3 c = cross(g1, g2);
    const double cn2 = std::abs(inner(c, c));
    if (std::sqrt(cn2) <= tol) throw DegenerateCurvature(s);
    const double det = g1.x1 * (g2.x2 * g3.x3 - g2.x3 * g3.x2) -
                       g1.x2 * (g2.x1 * g3.x3 - g2.x3 * g3.x1) +
                       g1.x3 * (g2.x1 * g3.x2 - g2.x2 * g3.x1);
    return {std::sqrt(cn2) / (speed * speed * speed), det / cn2};
}

}  // namespace mfc
