#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "mfc/adapted_frame.hpp"
#include "mfc/spinor.hpp"

namespace mfc {

using SpinorOdeKind = FrameOdeKind;

struct SpinorFlowSample {
    double s = 0.0;
    HSpinor spinor;
    double norm_defect = 0.0;
};

struct NormDrift : Error {
    double s, defect;
    NormDrift(double s_, double defect_)
        : Error("spinor flow norm drift " + format_double(defect_) + " at s=" + format_double(s_)),
          s(s_), defect(defect_) {}
};

/// Every flow here has the shape dphi/ds = xi phi + chi mate(phi) with xi
/// purely imaginary, which conserves conj(phi)^t phi for any chi.
struct SpinorRhsCoeffs {
    HyperbolicNumber xi, chi;
};

/// Coefficients per kind, matching the frame equations of kind_matrix():
///   spacelike general  xi = j l1/2,  chi = -(l2 + j l3)/2
///   timelike general   xi = j l2/2,  chi = -(l1 + j l3)/2
///   spacelike Bishop   xi = 0,       chi = -(l2b + j l3b)/2
///   spacelike Frenet   xi = j q/2,   chi = -p/2
///   timelike Bishop    xi = j l2b/2, chi = -j l3b/2
///   timelike Frenet    xi = j p/2,   chi = -q/2
/// (For the timelike kinds the j always rides with the l1-slot payload; the
/// flow consistency tests pin these against the frame equations.)
inline SpinorRhsCoeffs spinor_rhs_coeffs(SpinorOdeKind kind, const FrameCurvatures& cv) {
    switch (kind) {
        case FrameOdeKind::SpacelikeGeneral: {
            const auto* g = std::get_if<GeneralCurvatures>(&cv);
            if (!g) throw KindPayloadMismatch(kind);
            return {{0.0, g->l1 / 2}, {-g->l2 / 2, -g->l3 / 2}};
        }
        case FrameOdeKind::TimelikeGeneral: {
            const auto* g = std::get_if<GeneralCurvatures>(&cv);
            if (!g) throw KindPayloadMismatch(kind);
            return {{0.0, g->l2 / 2}, {-g->l1 / 2, -g->l3 / 2}};
        }
        case FrameOdeKind::SpacelikeBishop: {
            const auto* b = std::get_if<BishopCurvatures>(&cv);
            if (!b) throw KindPayloadMismatch(kind);
            return {{0.0, 0.0}, {-b->l2b / 2, -b->l3b / 2}};
        }
        case FrameOdeKind::TimelikeBishop: {
            const auto* b = std::get_if<BishopCurvatures>(&cv);
            if (!b) throw KindPayloadMismatch(kind);
            return {{0.0, b->l2b / 2}, {0.0, -b->l3b / 2}};
        }
        case FrameOdeKind::SpacelikeFrenet: {
            const auto* f = std::get_if<FrenetCurvatures>(&cv);
            if (!f) throw KindPayloadMismatch(kind);
            return {{0.0, f->q / 2}, {-f->p / 2, 0.0}};
        }
        case FrameOdeKind::TimelikeFrenet: {
            const auto* f = std::get_if<FrenetCurvatures>(&cv);
            if (!f) throw KindPayloadMismatch(kind);
            return {{0.0, f->p / 2}, {-f->q / 2, 0.0}};
        }
    }
    throw KindPayloadMismatch(kind);
}

inline HSpinor spinor_rhs(SpinorOdeKind kind, const FrameCurvatures& cv, const HSpinor& phi) {
    const auto [xi, chi] = spinor_rhs_coeffs(kind, cv);
    const HSpinor m = mate(phi);
    return {xi * phi.c1 + chi * m.c1, xi * phi.c2 + chi * m.c2};
}

/// Fixed-step 4th-order integration of the 4-real spinor system; one step
/// per consecutive grid pair. norm_defect tracks conj(phi)^t phi against its
/// initial value; drift beyond 1e-6 throws.
inline std::vector<SpinorFlowSample> propagate_spinor(SpinorOdeKind kind, const CurvatureFn& curv,
                                                      const HSpinor& init, const std::vector<double>& grid,
                                                      double norm_tol = 1e-9) {
    std::vector<SpinorFlowSample> out;
    if (grid.empty()) return out;
    const double n0 = spinor_norm(init);
    if (std::abs(std::abs(n0) - 1.0) > norm_tol) throw NotNormalized(n0);

    HSpinor p = init;
    out.push_back({grid[0], p, 0.0});
    const auto axpy = [](const HSpinor& x, double h, const HSpinor& k) {
        return HSpinor{x.c1 + h * k.c1, x.c2 + h * k.c2};
    };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double s = grid[i], h = grid[i + 1] - s;
        const auto c1 = curv(s), c2 = curv(s + h / 2), c4 = curv(s + h);
        const HSpinor k1 = spinor_rhs(kind, c1, p);
        const HSpinor k2 = spinor_rhs(kind, c2, axpy(p, h / 2, k1));
        const HSpinor k3 = spinor_rhs(kind, c2, axpy(p, h / 2, k2));
        const HSpinor k4 = spinor_rhs(kind, c4, axpy(p, h, k3));
        p = {p.c1 + (h / 6.0) * (k1.c1 + 2.0 * k2.c1 + 2.0 * k3.c1 + k4.c1),
             p.c2 + (h / 6.0) * (k1.c2 + 2.0 * k2.c2 + 2.0 * k3.c2 + k4.c2)};
        const double defect = std::abs(spinor_norm(p) - n0);
        if (defect > 1e-6) throw NormDrift(grid[i + 1], defect);
        out.push_back({grid[i + 1], p, defect});
    }
    return out;
}

inline std::vector<Triad> reconstruct_frames(const std::vector<SpinorFlowSample>& samples,
                                             CurveCharacter character) {
    std::vector<Triad> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(frame_from_spinor(s.spinor, character));
    return out;
}

// --------------------------------------------------------------------------
// Relation between the general-frame spinor phi and the adapted-frame spinor
// upsilon: phi = +- e^{j theta/2} upsilon, mate(phi) = +- e^{-j theta/2}
// mate(upsilon), and phi^t sigma phi = e^{j theta} (upsilon^t sigma upsilon).
// --------------------------------------------------------------------------

struct RelationResiduals {
    double plus = 0.0, minus = 0.0;            // phi -+ e^{j theta/2} upsilon
    double mate_plus = 0.0, mate_minus = 0.0;  // mate relation, same pairing
    double bilinear = 0.0;                     // sigma-square relation
};

inline RelationResiduals relation_phi_upsilon(const HSpinor& phi, const HSpinor& upsilon, double theta) {
    RelationResiduals r;
    const HyperbolicNumber rot = exp_j(theta / 2);
    const HSpinor w = rot * upsilon;
    r.plus = distance(phi, w);
    r.minus = distance(phi, -w);
    const HSpinor mw = exp_j(-theta / 2) * mate(upsilon);
    r.mate_plus = distance(mate(phi), mw);
    r.mate_minus = distance(mate(phi), -mw);
    const HVec3 bp = bilinear(phi, phi), bu = bilinear(upsilon, upsilon);
    const HyperbolicNumber e = exp_j(theta);
    r.bilinear = std::max({abs_max(bp.c1 - e * bu.c1), abs_max(bp.c2 - e * bu.c2), abs_max(bp.c3 - e * bu.c3)});
    return r;
}

// --------------------------------------------------------------------------
// Cross-formulation checks: the same spinor derivative evaluated once with
// general curvatures and once through the adapted-frame expressions.
// --------------------------------------------------------------------------

enum class CrossCheck {
    SpacelikeBishopMixed,              // d phi via Bishop curvatures and e^{j theta}
    SpacelikeFrenetMixed,              // d phi via (p, q, theta); minus sign on p e^{j theta} mate
    SpacelikeBishopSpinorFromGeneral,  // d upsilon (Bishop kind) via general curvatures
    SpacelikeFrenetSpinorFromGeneral,  // d upsilon (Frenet kind) via general curvatures
    TimelikeBishopMixed,
    TimelikeFrenetMixed,
    TimelikeBishopSpinorFromGeneral,
    TimelikeFrenetSpinorFromGeneral,
};

/// theta is the rotation angle (Bishop: integrated l1, theta_prime = l1;
/// Frenet: the angle from frenet_type_theta, theta_prime its rate). Returns
/// the max-abs componentwise distance between the two evaluations.
inline double cross_formulation_residual(CrossCheck check, const GeneralCurvatures& g, double theta,
                                         double theta_prime, const HSpinor& phi) {
    const HyperbolicNumber j{0, 1};
    const HSpinor m = mate(phi);
    const auto comb = [&](HyperbolicNumber xi, HyperbolicNumber chi) {
        return HSpinor{xi * phi.c1 + chi * m.c1, xi * phi.c2 + chi * m.c2};
    };
    const FrameCurvatures gen = GeneralCurvatures{g.l1, g.l2, g.l3};

    switch (check) {
        case CrossCheck::SpacelikeBishopMixed: {
            const auto lb = bishop_curvatures(g.l2, g.l3, theta, CurveCharacter::Spacelike);
            const HSpinor lhs = spinor_rhs(FrameOdeKind::SpacelikeGeneral, gen, phi);
            const HyperbolicNumber chi = -0.5 * (HyperbolicNumber{lb.l2b, lb.l3b} * exp_j(theta));
            return distance(lhs, comb({0.0, theta_prime / 2}, chi));
        }
        case CrossCheck::SpacelikeFrenetMixed: {
            const auto ft = frenet_type_theta(g.l2, g.l3, CurveCharacter::Spacelike);
            const HSpinor lhs = spinor_rhs(FrameOdeKind::SpacelikeGeneral, gen, phi);
            const double q = pq_curvature_q(g.l1, theta_prime);
            const HyperbolicNumber chi = -0.5 * ft.p * exp_j(ft.theta);
            return distance(lhs, comb({0.0, (q + theta_prime) / 2}, chi));
        }
        case CrossCheck::SpacelikeBishopSpinorFromGeneral: {
            const double ch = std::cosh(theta), sh = std::sinh(theta);
            const auto lb = bishop_curvatures(g.l2, g.l3, theta, CurveCharacter::Spacelike);
            const HSpinor lhs =
                spinor_rhs(FrameOdeKind::SpacelikeBishop, BishopCurvatures{lb.l2b, lb.l3b}, phi);
            const HyperbolicNumber chi{-(g.l2 * ch - g.l3 * sh) / 2, -(-g.l2 * sh + g.l3 * ch) / 2};
            return distance(lhs, comb({0.0, 0.0}, chi));
        }
        case CrossCheck::SpacelikeFrenetSpinorFromGeneral: {
            const auto ft = frenet_type_theta(g.l2, g.l3, CurveCharacter::Spacelike);
            const double q = pq_curvature_q(g.l1, theta_prime);
            const HSpinor lhs = spinor_rhs(FrameOdeKind::SpacelikeFrenet, FrenetCurvatures{ft.p, q}, phi);
            return distance(lhs, comb({0.0, (-theta_prime + g.l1) / 2}, {-ft.p / 2, 0.0}));
        }
        case CrossCheck::TimelikeBishopMixed: {
            const double c = std::cos(theta), sn = std::sin(theta);
            const auto lb = bishop_curvatures(g.l2, g.l3, theta, CurveCharacter::Timelike);
            const HSpinor lhs = spinor_rhs(FrameOdeKind::TimelikeGeneral, gen, phi);
            const HyperbolicNumber xi{0.0, (c * lb.l2b + sn * lb.l3b) / 2};
            const HyperbolicNumber chi{-theta_prime / 2, -(-sn * lb.l2b + c * lb.l3b) / 2};
            return distance(lhs, comb(xi, chi));
        }
        case CrossCheck::TimelikeFrenetMixed: {
            const auto ft = frenet_type_theta(g.l2, g.l3, CurveCharacter::Timelike);
            const double q = pq_curvature_q(g.l1, theta_prime);
            const HSpinor lhs = spinor_rhs(FrameOdeKind::TimelikeGeneral, gen, phi);
            const HyperbolicNumber xi{0.0, ft.p * std::cos(ft.theta) / 2};
            const HyperbolicNumber chi{-(q + theta_prime) / 2, ft.p * std::sin(ft.theta) / 2};
            return distance(lhs, comb(xi, chi));
        }
        case CrossCheck::TimelikeBishopSpinorFromGeneral: {
            const double c = std::cos(theta), sn = std::sin(theta);
            const auto lb = bishop_curvatures(g.l2, g.l3, theta, CurveCharacter::Timelike);
            const HSpinor lhs =
                spinor_rhs(FrameOdeKind::TimelikeBishop, BishopCurvatures{lb.l2b, lb.l3b}, phi);
            const HyperbolicNumber xi{0.0, (c * g.l2 - sn * g.l3) / 2};
            const HyperbolicNumber chi{0.0, -(sn * g.l2 + c * g.l3) / 2};
            return distance(lhs, comb(xi, chi));
        }
        case CrossCheck::TimelikeFrenetSpinorFromGeneral: {
            const auto ft = frenet_type_theta(g.l2, g.l3, CurveCharacter::Timelike);
            const double q = pq_curvature_q(g.l1, theta_prime);
            const HSpinor lhs = spinor_rhs(FrameOdeKind::TimelikeFrenet, FrenetCurvatures{ft.p, q}, phi);
            return distance(lhs, comb({0.0, ft.p / 2}, {-(-theta_prime + g.l1) / 2, 0.0}));
        }
    }
    throw Error("unknown cross-formulation check");
}

}  // namespace mfc
