#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "mfc/framed_curve.hpp"

namespace mfc {

struct AdaptedFrameSample {
    double s = 0.0;
    Vec3 mu, nu1b, nu2b;
    double theta = 0.0;
};

struct LightlikeRotation : Error {
    double l2, l3;
    LightlikeRotation(double l2_, double l3_)
        : Error("|l2| <= |l3| (" + format_double(l2_) + ", " + format_double(l3_) +
                "): no spacelike Frenet-type rotation exists"),
          l2(l2_), l3(l3_) {}
};

struct ZeroCurvature : Error {
    ZeroCurvature() : Error("(l2, l3) = (0, 0): rotation angle undefined") {}
};

/// Theta(s) = theta0 + integral of l1 from s0, by the same fixed-step
/// 4th-order scheme as the frame propagation. s0 must lie on the grid;
/// integration runs both directions from it.
inline std::vector<std::pair<double, double>> theta_bishop(const std::function<double(double)>& l1,
                                                           double s0, double theta0,
                                                           const std::vector<double>& grid) {
    std::vector<std::pair<double, double>> out(grid.size());
    if (grid.empty()) return out;

    std::size_t i0 = 0;
    double best = std::abs(grid[0] - s0);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - s0) < best) { best = std::abs(grid[i] - s0); i0 = i; }
    if (best > 1e-9 * std::max(1.0, std::abs(s0)))
        throw Error("theta_bishop: s0 not on the grid");

    const auto step = [&](double s, double h, double th) {
        const double k1 = l1(s);
        const double k2 = l1(s + h / 2);
        const double k4 = l1(s + h);
        return th + h / 6.0 * (k1 + 4.0 * k2 + k4);  // RK4 collapses to Simpson here
    };

    out[i0] = {grid[i0], theta0};
    for (std::size_t i = i0; i + 1 < grid.size(); ++i)
        out[i + 1] = {grid[i + 1], step(grid[i], grid[i + 1] - grid[i], out[i].second)};
    for (std::size_t i = i0; i > 0; --i)
        out[i - 1] = {grid[i - 1], step(grid[i], grid[i - 1] - grid[i], out[i].second)};
    return out;
}

/// Rotates (nu1, nu2) by the angle theta: hyperbolic rotation for spacelike
/// frames, circular for timelike. mu is untouched.
inline AdaptedFrameSample adapt_frame(const FrameSample& f, double theta, CurveCharacter character) {
    AdaptedFrameSample out;
    out.s = f.s;
    out.mu = f.mu;
    out.theta = theta;
    if (character == CurveCharacter::Spacelike) {
        const double ch = std::cosh(theta), sh = std::sinh(theta);
        out.nu1b = ch * f.nu1 - sh * f.nu2;
        out.nu2b = -sh * f.nu1 + ch * f.nu2;
    } else {
        const double c = std::cos(theta), sn = std::sin(theta);
        out.nu1b = c * f.nu1 - sn * f.nu2;
        out.nu2b = sn * f.nu1 + c * f.nu2;
    }
    return out;
}

/// Same rotation applied to the curvature pair (l2, l3).
inline BishopCurvatures bishop_curvatures(double l2, double l3, double theta, CurveCharacter character) {
    if (character == CurveCharacter::Spacelike) {
        const double ch = std::cosh(theta), sh = std::sinh(theta);
        return {ch * l2 - sh * l3, -sh * l2 + ch * l3};
    }
    const double c = std::cos(theta), sn = std::sin(theta);
    return {c * l2 - sn * l3, sn * l2 + c * l3};
}

struct FrenetTypeAngle {
    double theta = 0.0;
    double p = 0.0;
};

/// Spacelike: theta = artanh(l3/l2), p = sign(l2) sqrt(l2^2 - l3^2), so that
/// l2 = p cosh(theta), l3 = p sinh(theta). Requires |l2| > |l3|.
/// Timelike: theta = atan2(-l3, l2), p = hypot(l2, l3), so that
/// l2 = p cos(theta), l3 = -p sin(theta). Requires (l2, l3) != (0, 0).
inline FrenetTypeAngle frenet_type_theta(double l2, double l3, CurveCharacter character) {
    if (character == CurveCharacter::Spacelike) {
        if (std::abs(l2) <= std::abs(l3)) throw LightlikeRotation(l2, l3);
        return {std::atanh(l3 / l2), std::copysign(std::sqrt((l2 - l3) * (l2 + l3)), l2)};
    }
    if (l2 == 0.0 && l3 == 0.0) throw ZeroCurvature{};
    return {std::atan2(-l3, l2), std::hypot(l2, l3)};
}

inline double pq_curvature_q(double l1, double theta_prime) { return -theta_prime + l1; }

/// Rate of the Frenet-type angle, from the curvature jets.
inline double frenet_type_theta_rate(const CurvatureJets& cj, CurveCharacter character) {
    const double l2 = cj.l2.v, l3 = cj.l3.v, l2p = cj.l2.d1, l3p = cj.l3.d1;
    if (character == CurveCharacter::Spacelike) {
        const double denom = (l2 - l3) * (l2 + l3);
        if (denom == 0.0) throw LightlikeRotation(l2, l3);
        return (l3p * l2 - l2p * l3) / denom;
    }
    const double denom = l2 * l2 + l3 * l3;
    if (denom == 0.0) throw ZeroCurvature{};
    return (-l3p * l2 + l2p * l3) / denom;
}

/// Regular-point curvature/torsion from the adapted-frame data:
/// spacelike kappa = delta p / |alpha|, timelike kappa = p / |alpha|,
/// tau = q / alpha in both cases.
inline KappaTau kappa_tau_from_pq(double p, double q, double alpha, int delta,
                                  CurveCharacter character, double tol = 1e-12) {
    if (std::abs(alpha) <= tol) throw SingularPointError(0.0);
    const double kappa = (character == CurveCharacter::Spacelike ? delta * p : p) / std::abs(alpha);
    return {kappa, q / alpha};
}

}  // namespace mfc
