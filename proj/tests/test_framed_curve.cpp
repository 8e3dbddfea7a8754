#include <doctest.h>

#include <cmath>

#include "mfc/framed_curve.hpp"
#include "mfc/registry.hpp"
#include "oracles.hpp"

using mfc::CurveCharacter;
using mfc::FramedCurveSpec;
using mfc::Vec3;

namespace {

FramedCurveSpec spec_ex1(double lo = -1.0, double hi = 1.0) {
    FramedCurveSpec s = mfc::to_framed_spec(mfc::find_builtin("spacelike1"));
    s.s_min = lo;
    s.s_max = hi;
    return s;
}

FramedCurveSpec spec_ex2(double lo = -1.0, double hi = 1.0) {
    FramedCurveSpec s = mfc::to_framed_spec(mfc::find_builtin("timelike1"));
    s.s_min = lo;
    s.s_max = hi;
    return s;
}

}  // namespace

TEST_CASE("validation of the built-in curves") {
    const auto r1 = mfc::validate_framed(spec_ex1(), 101, 1e-8);
    CHECK(r1.pass);
    CHECK(r1.delta == 1);
    CHECK(r1.orientation == 1);
    CHECK(r1.nu1_class == mfc::CausalClass::Spacelike);
    CHECK(r1.nu2_class == mfc::CausalClass::Timelike);

    const auto r2 = mfc::validate_framed(spec_ex2(), 101, 1e-8);
    CHECK(r2.pass);
    CHECK(r2.orientation == -1);
}

TEST_CASE("tangent normal field is rejected") {
    FramedCurveSpec bad;
    bad.character = CurveCharacter::Spacelike;
    bad.gamma = {mfc::parse("0"), mfc::parse("s"), mfc::parse("0")};
    bad.nu1 = {mfc::parse("0"), mfc::parse("1"), mfc::parse("0")};  // equals gamma'/|gamma'|
    bad.nu2 = {mfc::parse("1"), mfc::parse("0"), mfc::parse("0")};
    bad.s_min = -1;
    bad.s_max = 1;
    try {
        mfc::validate_framed(bad, 11, 1e-8);
        FAIL("expected NotAFramedCurve");
    } catch (const mfc::NotAFramedCurve& e) {
        CHECK(e.condition == "<gamma',nu1> = 0");
    }
}

TEST_CASE("frame_at frozen values") {
    const auto f0 = mfc::frame_at(spec_ex1(), 0.0);
    CHECK(abs_max(f0.mu - Vec3{-1, -1, -1}) <= 1e-14);
    CHECK(abs_max(f0.nu1 - Vec3{0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0)}) <= 1e-14);
    CHECK(f0.delta == 1);
    CHECK(f0.orientation == 1);

    const auto f1 = mfc::frame_at(spec_ex1(), 1.0);
    CHECK(f1.nu1.x2 == doctest::Approx(0.70710678118654752).epsilon(1e-12));
    CHECK(f1.nu1.x3 == doctest::Approx(-0.70710678118654752).epsilon(1e-12));

    const auto g0 = mfc::frame_at(spec_ex2(), 0.0);
    CHECK(abs_max(g0.mu - Vec3{2 / std::sqrt(3.0), 0, 1 / std::sqrt(3.0)}) <= 1e-14);
    CHECK(g0.orientation == -1);
}

TEST_CASE("curvatures of curve 1 against the independent closed forms") {
    const auto spec = spec_ex1(-1.0, 1.6);

    const auto c1 = mfc::curvatures_at(spec, 1.0);
    CHECK(c1.l2 == doctest::Approx(-2.0 / std::sqrt(56.0)).epsilon(1e-12));
    CHECK(c1.l3 == doctest::Approx(6.0 / std::sqrt(392.0)).epsilon(1e-12));
    CHECK(c1.alpha == doctest::Approx(-std::sqrt(7.0)).epsilon(1e-12));
    CHECK(c1.l1 == doctest::Approx(oracle::ex1_l1(1.0)).epsilon(1e-12));

    for (int i = 0; i <= 40; ++i) {
        const double s = 0.25 + (1.5 - 0.25) * i / 40.0;
        const auto c = mfc::curvatures_at(spec, s);
        CHECK(c.l1 == doctest::Approx(oracle::ex1_l1(s)).epsilon(1e-10));
        CHECK(c.l2 == doctest::Approx(oracle::ex1_l2(s)).epsilon(1e-10));
        CHECK(c.l3 == doctest::Approx(oracle::ex1_l3(s)).epsilon(1e-10));
        CHECK(c.alpha == doctest::Approx(oracle::ex1_alpha(s)).epsilon(1e-10));
    }

    // independent finite-difference check of the l1 convention:
    // nu1' = l2 mu + l1 nu2 on the closed-form fields
    for (double s : {0.4, 1.0, 1.3}) {
        const auto c = mfc::curvatures_at(spec, s);
        const Vec3 n1p = oracle::central_diff(oracle::ex1_nu1, s);
        const Vec3 rhs = c.l2 * oracle::ex1_mu(s) + c.l1 * oracle::ex1_nu2(s);
        CHECK(abs_max(n1p - rhs) <= 1e-8);
    }
}

TEST_CASE("curvatures of curve 2") {
    const auto spec = spec_ex2();
    const double r3 = std::sqrt(3.0);
    for (double s : {-1.0, -0.25, 0.5, 1.0}) {
        const auto c = mfc::curvatures_at(spec, s);
        CHECK(c.l1 == doctest::Approx(1 / r3).epsilon(1e-12));
        CHECK(c.l2 == doctest::Approx(2 / r3).epsilon(1e-12));
        CHECK(std::abs(c.l3) <= 1e-12);
        CHECK(c.alpha == doctest::Approx(r3 * (s - 3)).epsilon(1e-12));
    }
    CHECK(mfc::curvatures_at(spec, 1.0).alpha == doctest::Approx(-2 * r3).epsilon(1e-12));
}

TEST_CASE("singular points") {
    CHECK(mfc::singular_points(spec_ex1(), 101, 1e-10) == std::vector<double>{0.0});

    // even with a grid that misses s = 0, the |alpha| dip is refined
    const auto roots = mfc::singular_points(spec_ex1(), 100, 1e-10);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0]) <= 1e-6);

    CHECK(mfc::singular_points(spec_ex2(), 101, 1e-10).empty());

    const auto r2 = mfc::singular_points(spec_ex2(2.0, 4.0), 101, 1e-10);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("frame propagation reproduces the closed-form frames") {
    const auto spec = spec_ex1(0.25, 1.6);
    const auto curv = [&](double s) -> mfc::FrameCurvatures {
        const auto c = mfc::curvatures_at(spec, s);
        return mfc::GeneralCurvatures{c.l1, c.l2, c.l3};
    };
    const auto f0 = mfc::frame_at(spec, 0.5);
    std::vector<double> grid;
    for (int i = 0; i <= 1000; ++i) grid.push_back(0.5 + i * 1e-3);
    const auto flow = mfc::propagate_frame(mfc::FrameOdeKind::SpacelikeGeneral, curv,
                                           {f0.mu, f0.nu1, f0.nu2}, grid, f0.delta);
    double worst = 0.0, gram = 0.0;
    for (const auto& fs : flow) {
        const auto ref = mfc::frame_at(spec, fs.s);
        worst = std::max({worst, abs_max(fs.frame.mu - ref.mu), abs_max(fs.frame.nu1 - ref.nu1),
                          abs_max(fs.frame.nu2 - ref.nu2)});
        gram = std::max(gram, fs.gram_defect);
    }
    CHECK(worst <= 1e-6);
    CHECK(gram <= 1e-8);
}

TEST_CASE("zero curvature freezes the timelike frame") {
    const auto curv = [](double) -> mfc::FrameCurvatures { return mfc::GeneralCurvatures{0, 0, 0}; };
    const mfc::Triad init{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::vector<double> grid{0.0, 0.5, 1.0};
    const auto flow = mfc::propagate_frame(mfc::FrameOdeKind::TimelikeGeneral, curv, init, grid);
    CHECK(abs_max(flow.back().frame.mu - init.mu) == 0.0);
    CHECK(abs_max(flow.back().frame.nu1 - init.nu1) == 0.0);
}

TEST_CASE("timelike Frenet-type propagation satisfies mu' = p nu1") {
    const double p = 2 / std::sqrt(3.0), q = 1 / std::sqrt(3.0);
    const auto curv = [&](double) -> mfc::FrameCurvatures { return mfc::FrenetCurvatures{p, q}; };
    const auto f0 = mfc::frame_at(spec_ex2(), 0.0);
    std::vector<double> grid;
    for (int i = 0; i <= 2000; ++i) grid.push_back(-1.0 + i * 1e-3);
    const auto flow = mfc::propagate_frame(mfc::FrameOdeKind::TimelikeFrenet, curv,
                                           {f0.mu, f0.nu1, f0.nu2}, grid);
    double worst = 0.0;
    const double h = 1e-3;
    for (std::size_t i = 2; i + 2 < flow.size(); ++i) {
        // fourth-order five-point stencil
        const Vec3 dmu = (1.0 / (12 * h)) * (-flow[i + 2].frame.mu + 8.0 * flow[i + 1].frame.mu -
                                             8.0 * flow[i - 1].frame.mu + flow[i - 2].frame.mu);
        worst = std::max(worst, abs_max(dmu - p * flow[i].frame.nu1));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("gamma' = alpha mu on validation grids of both curves") {
    const auto r1 = mfc::probe_framed(spec_ex1(), 201, 1e-6);
    CHECK(r1.max_speed_defect <= 1e-8);
    const auto r2 = mfc::probe_framed(spec_ex2(), 201, 1e-6);
    CHECK(r2.max_speed_defect <= 1e-8);
}

TEST_CASE("propagation reports Gram drift instead of silently degrading") {
    // step far too coarse for the curvature magnitude
    const auto curv = [](double) -> mfc::FrameCurvatures { return mfc::GeneralCurvatures{50, 50, 50}; };
    const mfc::Triad init{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
    CHECK_THROWS_AS(mfc::propagate_frame(mfc::FrameOdeKind::TimelikeGeneral, curv, init, grid),
                    mfc::GramDrift);
}

TEST_CASE("payload mismatch is rejected") {
    CHECK_THROWS_AS((void)mfc::kind_matrix(mfc::FrameOdeKind::SpacelikeGeneral, mfc::FrenetCurvatures{1, 1}),
                    mfc::KindPayloadMismatch);
    CHECK_THROWS_AS((void)mfc::kind_matrix(mfc::FrameOdeKind::TimelikeBishop, mfc::GeneralCurvatures{1, 1, 1}),
                    mfc::KindPayloadMismatch);
}

TEST_CASE("kappa/tau from gamma derivatives") {
    const auto spec2 = spec_ex2();
    const auto kt = mfc::frenet_kappa_tau(spec2.gamma, 1.0);
    CHECK(kt.kappa == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(kt.tau == doctest::Approx(-1.0 / 6).epsilon(1e-12));

    const auto spec1 = spec_ex1();
    CHECK_THROWS_AS(mfc::frenet_kappa_tau(spec1.gamma, 0.0), mfc::SingularPointError);
}
