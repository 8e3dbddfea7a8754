// Acceptance suite: one pass/fail line per criterion, every tolerance pinned
// in code. Reference values come from oracles.hpp (closed forms and
// independent numerics), never from the code paths under test.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "mfc/registry.hpp"
#include "mfc/run.hpp"
#include "mfc/spinor_ode.hpp"
#include "oracles.hpp"

using mfc::CurveCharacter;
using mfc::FrameOdeKind;
using mfc::HSpinor;
using mfc::Vec3;

namespace {

void report(int n, const char* what, bool ok, double worst) {
    std::printf("criterion %2d %-58s %s (worst %.3e)\n", n, what, ok ? "PASS" : "FAIL", worst);
    std::fflush(stdout);
}

mfc::FramedCurveSpec spec_of(const char* name, double lo, double hi) {
    auto s = mfc::to_framed_spec(mfc::find_builtin(name));
    s.s_min = lo;
    s.s_max = hi;
    return s;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

double triad_distance(const mfc::Triad& a, const mfc::Triad& b) {
    return std::max({abs_max(a.mu - b.mu), abs_max(a.nu1 - b.nu1), abs_max(a.nu2 - b.nu2)});
}

}  // namespace

TEST_CASE("criterion 1: timelike curve constants p, q, alpha") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = spec_of("timelike1", -1.0, 1.0);
    const double r3 = std::sqrt(3.0);
    double worst = 0.0;
    for (double s : linspace(-1.0, 1.0, 101)) {
        const auto cj = mfc::curvature_jets(spec, s);
        const auto ft = mfc::frenet_type_theta(cj.l2.v, cj.l3.v, CurveCharacter::Timelike);
        const double q = mfc::pq_curvature_q(cj.l1.v, mfc::frenet_type_theta_rate(cj, CurveCharacter::Timelike));
        worst = std::max({worst, std::abs(ft.p - 2 / r3), std::abs(q - 1 / r3),
                          std::abs(cj.alpha.v - r3 * (s - 3))});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = worst <= 1e-9 && secs < 1.0;
    report(1, "timelike constants p=2/sqrt3, q=1/sqrt3, alpha=sqrt3(s-3)", ok, worst);
    CHECK(worst <= 1e-9);
    CHECK(secs < 1.0);
}

TEST_CASE("criterion 2: spacelike curvature closed forms and singular set") {
    const auto spec = spec_of("spacelike1", -1.0, 1.6);
    double worst = 0.0;
    for (double s : linspace(0.25, 1.5, 101)) {
        const auto c = mfc::curvatures_at(spec, s);
        const auto rel = [](double got, double want) {
            return std::abs(got - want) / std::max(1e-30, std::abs(want));
        };
        worst = std::max({worst, rel(c.l1, oracle::ex1_l1(s)), rel(c.l2, oracle::ex1_l2(s)),
                          rel(c.l3, oracle::ex1_l3(s)), rel(c.alpha, oracle::ex1_alpha(s))});
    }
    const auto roots = mfc::singular_points(spec_of("spacelike1", -1.0, 1.0), 101, 1e-10);
    const bool roots_ok = roots.size() == 1 && std::abs(roots[0]) <= 1e-10;
    report(2, "spacelike curvatures vs closed forms; singular set {0}", worst <= 1e-9 && roots_ok, worst);
    CHECK(worst <= 1e-9);
    CHECK(roots_ok);
}

TEST_CASE("criterion 3: frame equations vs finite differences of both curves") {
    double worst = 0.0;
    const double h = 1e-5;

    const auto spec1 = spec_of("spacelike1", -1.0, 1.0);
    for (double s : linspace(-0.99, 0.99, 201)) {
        const auto c = mfc::curvatures_at(spec1, s);
        const auto m = mfc::kind_matrix(FrameOdeKind::SpacelikeGeneral,
                                        mfc::GeneralCurvatures{c.l1, c.l2, c.l3}, 1.0);
        const Vec3 rows[3] = {oracle::ex1_mu(s), oracle::ex1_nu1(s), oracle::ex1_nu2(s)};
        const Vec3 d[3] = {oracle::central_diff(oracle::ex1_mu, s, h),
                           oracle::central_diff(oracle::ex1_nu1, s, h),
                           oracle::central_diff(oracle::ex1_nu2, s, h)};
        for (int r = 0; r < 3; ++r)
            worst = std::max(worst, abs_max(d[r] - (m[r][0] * rows[0] + m[r][1] * rows[1] + m[r][2] * rows[2])));
    }

    const auto spec2 = spec_of("timelike1", -1.0, 1.0);
    for (double s : linspace(-0.99, 0.99, 201)) {
        const auto c = mfc::curvatures_at(spec2, s);
        const auto m =
            mfc::kind_matrix(FrameOdeKind::TimelikeGeneral, mfc::GeneralCurvatures{c.l1, c.l2, c.l3});
        const Vec3 rows[3] = {oracle::ex2_mu(s), oracle::ex2_nu1(s), oracle::ex2_nu2(s)};
        const Vec3 d[3] = {oracle::central_diff(oracle::ex2_mu, s, h),
                           oracle::central_diff(oracle::ex2_nu1, s, h),
                           oracle::central_diff(oracle::ex2_nu2, s, h)};
        for (int r = 0; r < 3; ++r)
            worst = std::max(worst, abs_max(d[r] - (m[r][0] * rows[0] + m[r][1] * rows[1] + m[r][2] * rows[2])));
    }

    report(3, "frame equations match FD of the closed-form frames", worst <= 1e-6, worst);
    CHECK(worst <= 1e-6);
}

TEST_CASE("criterion 4: spinor flows track frame flows for all six kinds") {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(401);
    const auto grid = linspace(0.0, 1.0, 1001);
    double worst = 0.0;

    const FrameOdeKind kinds[6] = {FrameOdeKind::SpacelikeGeneral, FrameOdeKind::TimelikeGeneral,
                                   FrameOdeKind::SpacelikeBishop,  FrameOdeKind::SpacelikeFrenet,
                                   FrameOdeKind::TimelikeBishop,   FrameOdeKind::TimelikeFrenet};
    for (const auto kind : kinds) {
        for (int seed = 0; seed < 5; ++seed) {
            const auto f1 = oracle::random_smooth(rng), f2 = oracle::random_smooth(rng),
                       f3 = oracle::random_smooth(rng);
            const auto curv = [&](double s) -> mfc::FrameCurvatures {
                switch (kind) {
                    case FrameOdeKind::SpacelikeGeneral:
                    case FrameOdeKind::TimelikeGeneral:
                        return mfc::GeneralCurvatures{f1(s), f2(s), f3(s)};
                    case FrameOdeKind::SpacelikeBishop:
                    case FrameOdeKind::TimelikeBishop:
                        return mfc::BishopCurvatures{f1(s), f2(s)};
                    default:
                        return mfc::FrenetCurvatures{f1(s), f2(s)};
                }
            };
            const auto character = mfc::is_timelike_kind(kind) ? CurveCharacter::Timelike
                                                               : CurveCharacter::Spacelike;
            const HSpinor init = oracle::random_unit_spinor(rng);
            const auto flow = mfc::propagate_spinor(kind, curv, init, grid);
            const auto frames = mfc::reconstruct_frames(flow, character);
            const auto ref = mfc::propagate_frame(kind, curv, frames.front(), grid, 1.0);
            for (std::size_t i = 0; i < grid.size(); ++i)
                worst = std::max(worst, triad_distance(frames[i], ref[i].frame));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(4, "reconstruct(propagate_spinor) == propagate_frame, 6 kinds", worst <= 1e-6 && secs < 10.0,
           worst);
    CHECK(worst <= 1e-6);
    CHECK(secs < 10.0);
}

TEST_CASE("criterion 5: algebraic identity suite (1000 cases each)") {
    std::mt19937 rng(501);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HSpinor eta{oracle::random_hyperbolic(rng), oracle::random_hyperbolic(rng)};
        const HSpinor phi{oracle::random_hyperbolic(rng), oracle::random_hyperbolic(rng)};

        const auto a = bilinear(eta, phi), b = bilinear(phi, eta);
        worst = std::max({worst, abs_max(a.c1 - b.c1), abs_max(a.c2 - b.c2), abs_max(a.c3 - b.c3)});

        const auto hm = bilinear(mate(eta), mate(phi));
        worst = std::max({worst, abs_max(conj(a.c1) + hm.c1), abs_max(conj(a.c2) + hm.c2),
                          abs_max(conj(a.c3) + hm.c3)});

        const auto r1 = oracle::random_hyperbolic(rng), r2 = oracle::random_hyperbolic(rng);
        const HSpinor lin = mate(HSpinor{r1 * eta.c1 + r2 * phi.c1, r1 * eta.c2 + r2 * phi.c2});
        const HSpinor rhs = {conj(r1) * mate(eta).c1 + conj(r2) * mate(phi).c1,
                             conj(r1) * mate(eta).c2 + conj(r2) * mate(phi).c2};
        worst = std::max(worst, mfc::distance(lin, rhs));
    }
    // two-to-one: exact equality of the triads of phi and -phi
    double two_to_one = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HSpinor phi = oracle::random_unit_spinor(rng, true);
        for (auto ch : {CurveCharacter::Spacelike, CurveCharacter::Timelike})
            two_to_one = std::max(two_to_one, triad_distance(mfc::frame_from_spinor(phi, ch),
                                                             mfc::frame_from_spinor(-phi, ch)));
    }
    worst = std::max(worst, two_to_one);
    report(5, "bilinear symmetry/conjugation, mate antilinearity, 2:1", worst <= 1e-12, worst);
    CHECK(worst <= 1e-12);
}

TEST_CASE("criterion 6: extraction round trip on 1000 random unit spinors") {
    std::mt19937 rng(601);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HSpinor phi = oracle::random_unit_spinor(rng, true);
        for (auto ch : {CurveCharacter::Spacelike, CurveCharacter::Timelike}) {
            const auto t = mfc::frame_from_spinor(phi, ch);
            const HSpinor rec = mfc::spinor_from_frame(t, ch);
            worst = std::max(worst, std::min(mfc::distance(rec, phi), mfc::distance(rec, -phi)));
        }
    }
    report(6, "spinor_from_frame o frame_from_spinor = +-identity", worst <= 1e-10, worst);
    CHECK(worst <= 1e-10);
}

TEST_CASE("criterion 7: general/adapted spinor relation along dual flows") {
    std::mt19937 rng(701);
    const auto grid = linspace(0.0, 1.0, 1001);
    const auto l1 = [](double s) { return 0.4 * std::sin(2 * s) + 0.1; };
    const auto l2 = [](double s) { return 1.5 + 0.3 * std::cos(s); };
    const auto l3 = [](double s) { return 0.5 * std::sin(1.3 * s); };
    const auto general = [&](double s) -> mfc::FrameCurvatures {
        return mfc::GeneralCurvatures{l1(s), l2(s), l3(s)};
    };
    double worst_rel = 0.0, worst_bil = 0.0;

    // Frenet-type pair: theta from the curvature pair, q = -theta' + l1
    {
        const auto theta = [&](double s) { return std::atanh(l3(s) / l2(s)); };
        const auto adapted = [&](double s) -> mfc::FrameCurvatures {
            const auto ft = mfc::frenet_type_theta(l2(s), l3(s), CurveCharacter::Spacelike);
            const double rate = oracle::central_diff1(theta, s, 1e-6);
            return mfc::FrenetCurvatures{ft.p, mfc::pq_curvature_q(l1(s), rate)};
        };
        const HSpinor u0 = oracle::random_unit_spinor(rng);
        const HSpinor phi0 = mfc::exp_j(theta(0.0) / 2) * u0;
        const auto uflow = mfc::propagate_spinor(FrameOdeKind::SpacelikeFrenet, adapted, u0, grid);
        const auto pflow = mfc::propagate_spinor(FrameOdeKind::SpacelikeGeneral, general, phi0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto r = mfc::relation_phi_upsilon(pflow[i].spinor, uflow[i].spinor, theta(grid[i]));
            worst_rel = std::max(worst_rel, std::min(r.plus, r.minus));
            worst_rel = std::max(worst_rel, std::min(r.mate_plus, r.mate_minus));
            worst_bil = std::max(worst_bil, r.bilinear);
        }
    }

    // Bishop-type pair: theta integrates l1 from an arbitrary theta0
    {
        const double theta0 = 0.3;
        const auto theta = [&](double s) { return theta0 + oracle::integrate(l1, 0.0, s, 1e-14); };
        std::vector<double> half(2 * grid.size() - 1);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            half[2 * i] = grid[i];
            half[2 * i + 1] = 0.5 * (grid[i] + grid[i + 1]);
        }
        half.back() = grid.back();
        const auto th = mfc::theta_bishop(l1, 0.0, theta0, half);
        const auto theta_at = [&](double s) {
            const double hstep = 0.5 * (grid[1] - grid[0]);
            return th[static_cast<std::size_t>(std::llround(s / hstep))].second;
        };
        const auto adapted = [&](double s) -> mfc::FrameCurvatures {
            return mfc::bishop_curvatures(l2(s), l3(s), theta_at(s), CurveCharacter::Spacelike);
        };
        const HSpinor u0 = oracle::random_unit_spinor(rng);
        const HSpinor phi0 = mfc::exp_j(theta0 / 2) * u0;
        const auto uflow = mfc::propagate_spinor(FrameOdeKind::SpacelikeBishop, adapted, u0, grid);
        const auto pflow = mfc::propagate_spinor(FrameOdeKind::SpacelikeGeneral, general, phi0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto r = mfc::relation_phi_upsilon(pflow[i].spinor, uflow[i].spinor, theta(grid[i]));
            worst_rel = std::max(worst_rel, std::min(r.plus, r.minus));
            worst_bil = std::max(worst_bil, r.bilinear);
        }
    }

    report(7, "phi = +-e^{j theta/2} upsilon and the bilinear relation", worst_rel <= 1e-6 && worst_bil <= 1e-8,
           std::max(worst_rel, worst_bil));
    CHECK(worst_rel <= 1e-6);
    CHECK(worst_bil <= 1e-8);
}

TEST_CASE("criterion 8: kappa/tau agree between the two routes") {
    const auto spec = spec_of("timelike1", -1.0, 2.0);
    double worst = 0.0;
    for (double s : linspace(0.5, 1.5, 101)) {
        const auto cj = mfc::curvature_jets(spec, s);
        const auto ft = mfc::frenet_type_theta(cj.l2.v, cj.l3.v, CurveCharacter::Timelike);
        const double q = mfc::pq_curvature_q(cj.l1.v, mfc::frenet_type_theta_rate(cj, CurveCharacter::Timelike));
        const auto a = mfc::kappa_tau_from_pq(ft.p, q, cj.alpha.v, 1, CurveCharacter::Timelike);
        const auto b = mfc::frenet_kappa_tau(spec.gamma, s);
        worst = std::max({worst, std::abs(a.kappa - b.kappa), std::abs(a.tau - b.tau)});
    }
    const auto at1 = mfc::frenet_kappa_tau(spec.gamma, 1.0);
    const bool pinned = std::abs(at1.kappa - 1.0 / 3) <= 1e-12 && std::abs(at1.tau + 1.0 / 6) <= 1e-12;
    report(8, "kappa = p/|alpha|, tau = q/alpha vs gamma-jet route", worst <= 1e-8 && pinned, worst);
    CHECK(worst <= 1e-8);
    CHECK(pinned);
}

TEST_CASE("criterion 9: cross-formulation derivative identities") {
    std::mt19937 rng(901);
    const HSpinor probe = oracle::random_unit_spinor(rng);
    double worst = 0.0;

    // spacelike curve: Bishop forms on [0.25, 1.5]
    {
        const auto spec = spec_of("spacelike1", -1.0, 1.6);
        const auto grid = linspace(0.25, 1.5, 101);
        const auto l1 = [&](double s) { return mfc::curvatures_at(spec, s).l1; };
        const auto theta = mfc::theta_bishop(l1, 0.25, 0.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto c = mfc::curvatures_at(spec, grid[i]);
            const mfc::GeneralCurvatures g{c.l1, c.l2, c.l3};
            worst = std::max(worst, mfc::cross_formulation_residual(mfc::CrossCheck::SpacelikeBishopMixed, g,
                                                                    theta[i].second, c.l1, probe));
            worst = std::max(worst,
                             mfc::cross_formulation_residual(mfc::CrossCheck::SpacelikeBishopSpinorFromGeneral,
                                                             g, theta[i].second, c.l1, probe));
        }
    }

    // spacelike curve: Frenet-type forms where p^2 = l2^2 - l3^2 > 0
    {
        const auto spec = spec_of("spacelike1", -1.0, 1.0);
        for (double s : linspace(-0.6, -0.3, 101)) {
            const auto cj = mfc::curvature_jets(spec, s);
            const mfc::GeneralCurvatures g{cj.l1.v, cj.l2.v, cj.l3.v};
            const double rate = mfc::frenet_type_theta_rate(cj, CurveCharacter::Spacelike);
            worst = std::max(worst, mfc::cross_formulation_residual(mfc::CrossCheck::SpacelikeFrenetMixed, g,
                                                                    0.0, rate, probe));
            worst = std::max(worst,
                             mfc::cross_formulation_residual(mfc::CrossCheck::SpacelikeFrenetSpinorFromGeneral,
                                                             g, 0.0, rate, probe));
        }
    }

    // timelike curve: all four mixed forms on [-1, 1]
    {
        const auto spec = spec_of("timelike1", -1.0, 1.0);
        const auto grid = linspace(-1.0, 1.0, 101);
        const auto l1 = [&](double s) { return mfc::curvatures_at(spec, s).l1; };
        const auto theta = mfc::theta_bishop(l1, -1.0, 0.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto cj = mfc::curvature_jets(spec, grid[i]);
            const mfc::GeneralCurvatures g{cj.l1.v, cj.l2.v, cj.l3.v};
            const double rate = mfc::frenet_type_theta_rate(cj, CurveCharacter::Timelike);
            worst = std::max(worst, mfc::cross_formulation_residual(mfc::CrossCheck::TimelikeBishopMixed, g,
                                                                    theta[i].second, g.l1, probe));
            worst = std::max(worst,
                             mfc::cross_formulation_residual(mfc::CrossCheck::TimelikeBishopSpinorFromGeneral,
                                                             g, theta[i].second, g.l1, probe));
            worst = std::max(worst, mfc::cross_formulation_residual(mfc::CrossCheck::TimelikeFrenetMixed, g,
                                                                    0.0, rate, probe));
            worst = std::max(worst,
                             mfc::cross_formulation_residual(mfc::CrossCheck::TimelikeFrenetSpinorFromGeneral,
                                                             g, 0.0, rate, probe));
        }
    }

    report(9, "general vs adapted spinor derivative formulations", worst <= 1e-9, worst);
    CHECK(worst <= 1e-9);
}

TEST_CASE("criterion 10: representability honesty and no silent NaN") {
    bool ok = true;
    double worst = 0.0;

    // (a) spacelike curve 1's triad: radicand (1 + 3j)/(2 sqrt2)
    {
        const auto spec = spec_of("spacelike1", -1.0, 1.0);
        const auto f = mfc::frame_at(spec, 0.0);
        try {
            mfc::spinor_from_frame({f.mu, f.nu1, f.nu2}, CurveCharacter::Spacelike);
            ok = false;
        } catch (const mfc::ComponentNotRepresentable& e) {
            worst = std::max({worst, std::abs(e.u - std::sqrt(2.0)), std::abs(e.v + 1 / std::sqrt(2.0))});
            ok = ok && worst <= 1e-12;
        }
    }

    // (b) timelike curve 2's second component: radicand -(1 + 2/sqrt3) e^{j s};
    //     both null coordinates are negative for every s
    {
        const double c = -(1.0 + 2.0 / std::sqrt(3.0)) / 2.0;
        for (double s : {-0.5, 0.0, 1.0}) {
            const mfc::HyperbolicNumber radicand = c * mfc::exp_j(s);
            try {
                mfc::sqrt_h(radicand);
                ok = false;
            } catch (const mfc::NotRepresentable& e) {
                worst = std::max({worst, std::abs(e.u - c * std::exp(s)), std::abs(e.v - c * std::exp(-s))});
                ok = ok && e.u < 0.0 && e.v < 0.0;
            }
        }
    }

    // (c) the timelike triad itself is rejected rather than silently mapped:
    //     its packed radicand j (2/sqrt3 - 1)/2 has mixed-sign null
    //     coordinates, hence is no hyperbolic square
    {
        const auto spec = spec_of("timelike1", -1.0, 1.0);
        const auto f = mfc::frame_at(spec, 0.0);
        try {
            mfc::spinor_from_frame({f.mu, f.nu1, f.nu2}, CurveCharacter::Timelike);
            ok = false;
        } catch (const mfc::ComponentNotRepresentable& e) {
            const double c = (2.0 / std::sqrt(3.0) - 1.0) / 2.0;
            worst = std::max({worst, std::abs(e.u - c), std::abs(e.v + c)});
            ok = ok && e.u > 0.0 && e.v < 0.0;
        }
    }

    // (d) the eval pipeline never leaks NaN silently: non-computable fields
    //     are "nan" with a warning, everything else is finite
    {
        std::ostringstream csv, diag;
        mfc::run_eval(mfc::builtin_config("spacelike1"), csv, diag);
        bool saw_nan = false;
        std::istringstream in(csv.str());
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string field;
            int idx = 0;
            while (std::getline(row, field, ',')) {
                if (field == "nan") {
                    saw_nan = true;
                    ok = ok && (idx == 19 || idx == 20);  // p and q only
                } else {
                    ok = ok && std::isfinite(std::stod(field));
                }
                ++idx;
            }
        }
        ok = ok && saw_nan && !diag.str().empty();

        std::ostringstream csv2, diag2;
        mfc::run_eval(mfc::builtin_config("timelike1"), csv2, diag2);
        ok = ok && csv2.str().find("nan") == std::string::npos;
    }

    report(10, "NotRepresentable diagnostics and explicit-NaN policy", ok, worst);
    CHECK(ok);
}
