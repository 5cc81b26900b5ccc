#include <doctest.h>

#include <cmath>

#include "ergm/errors.hpp"
#include "ergm/phase_curve.hpp"

using namespace ergm;

TEST_SUITE("phase_curve") {

TEST_CASE("classify reference points") {
    CHECK(classify_point(ModelParams(0, 0, 2)).off_curve());
    CHECK(classify_point(ModelParams(-2.5, 2.5, 2)).on_curve());
    CHECK(classify_point(ModelParams(-2, 2, 2)).critical());
    CHECK(classify_point(ModelParams(-2 + 1e-11, 2, 2)).critical());
    CHECK_FALSE(classify_point(ModelParams(-2 + 1e-6, 2, 2)).critical());
    CHECK_THROWS_AS(classify_point(ModelParams(0, 0, 2), 0.0), DomainError);
}

TEST_CASE("p=2 curve is the antidiagonal") {
    for (double b1 : {-2.5, -4.0, -2.01, -7.0}) {
        const CurvePoint pt = solve_q(b1, 2);
        CHECK(std::abs(pt.beta2 + b1) < 1e-8);
        CHECK(std::abs(pt.q_prime + 1) < 1e-10);
        CHECK(std::abs(pt.x1_star + pt.x2_star - 1) < 1e-10);
        CHECK(q_prime(pt) == pt.q_prime);
    }
}

TEST_CASE("p=3 reference point") {
    const CurvePoint pt = solve_q(-1.2, 3);
    CHECK(pt.residual < 1e-10);
    CHECK(pt.q_prime > -1.0);
    CHECK(pt.q_prime < -0.75);
    CHECK(pt.beta2 > critical_point(3).beta2c);
    CHECK(pt.x1_star < 2.0 / 3.0);
    CHECK(pt.x2_star > 2.0 / 3.0);
    // Warm start lands on the same point.
    const CurvePoint warm = solve_q(-1.2, 3, kDefaultCurveTol, pt.beta2 + 0.01);
    CHECK(std::abs(warm.beta2 - pt.beta2) < 1e-12);
}

TEST_CASE("curve points satisfy the stationarity and equal-height equations") {
    for (int p : {2, 3, 4, 5}) {
        const double b1c = critical_point(p).beta1c;
        for (double off : {0.01, 0.3, 1.0, 3.0}) {
            const CurvePoint pt = solve_q(b1c - off, p);
            const ModelParams params(pt.beta1, pt.beta2, p);
            CHECK(std::abs(ell_deriv(pt.x1_star, params, 1)) < 1e-9);
            CHECK(std::abs(ell_deriv(pt.x2_star, params, 1)) < 1e-9);
            CHECK(std::abs(ell(pt.x1_star, params) - ell(pt.x2_star, params)) < 1e-9);
            CHECK(pt.q_prime < 0.0);
            if (p >= 3) {
                CHECK(pt.q_prime > -1.0);
                CHECK(pt.q_prime < q_prime_critical_limit(p));
            }
        }
    }
}

TEST_CASE("slope approaches its critical limit") {
    CHECK(q_prime_critical_limit(2) == -1.0);
    CHECK(q_prime_critical_limit(3) == doctest::Approx(-0.75).epsilon(1e-15));
    const CurvePoint near = solve_q(critical_point(3).beta1c - 2e-4, 3);
    CHECK(std::abs(near.q_prime - q_prime_critical_limit(3)) < 1e-2);
    const CurvePoint far = solve_q(-40.0, 3);
    CHECK(std::abs(far.q_prime + 1) < 1e-3);
}

TEST_CASE("p=2 trace") {
    const auto pts = trace_curve(2, -2.2, -5.0, 0.1);
    CHECK(pts.size() == 29);
    double worst = 0.0;
    for (const auto& pt : pts) worst = std::max(worst, std::abs(pt.beta2 + pt.beta1));
    CHECK(worst < 1e-8);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        CHECK(pts[k].beta1 < pts[k - 1].beta1);
        // Straight line: q' constant, convexity holds only weakly.
        CHECK(std::abs(pts[k].q_prime - pts[k - 1].q_prime) < 1e-10);
    }
}

TEST_CASE("p=3 trace: slope, convexity and maximizer drift") {
    const double step = 0.05;
    const auto pts = trace_curve(3, -1.0, -3.0, step);
    REQUIRE(pts.size() == 41);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        CHECK(pts[k].q_prime < pts[k - 1].q_prime);
        CHECK(pts[k].x1_star < pts[k - 1].x1_star);
        CHECK(pts[k].x2_star > pts[k - 1].x2_star);
        CHECK(pts[k].q_prime > -1.0);
        CHECK(pts[k].q_prime < -0.75);
    }
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        const double fd = (pts[k - 1].beta2 - pts[k + 1].beta2) / (2 * step);
        CHECK(std::abs(fd - pts[k].q_prime) < 1e-4);
    }
}

TEST_CASE("perturbing off the curve picks a side") {
    const double tol = kDefaultCurveTol;
    for (int p : {2, 3}) {
        for (const CurvePoint& pt : trace_curve(p, critical_point(p).beta1c - 0.2, critical_point(p).beta1c - 2.2, 0.5)) {
            const double xc = (p - 1.0) / p;
            const PhaseClassification above = classify_point(ModelParams(pt.beta1, pt.beta2 + 10 * tol, p));
            const PhaseClassification below = classify_point(ModelParams(pt.beta1, pt.beta2 - 10 * tol, p));
            REQUIRE(above.off_curve());
            REQUIRE(below.off_curve());
            CHECK(std::get<OffCurve>(above.variant).x_star > xc);
            CHECK(std::get<OffCurve>(below.variant).x_star < xc);
        }
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(solve_q(-1.9, 2), DomainError);
    CHECK_THROWS_AS(solve_q(-2.00005, 2), DomainError);
    CHECK_THROWS_AS(solve_q(-2.5, 2, 0.0), DomainError);
    CHECK_THROWS_AS(trace_curve(2, -2.5, -3.0, 0.0), DomainError);
    CHECK_THROWS_AS(trace_curve(2, -3.0, -2.5, 0.1), DomainError);
    CHECK_THROWS_AS(trace_curve(2, -1.5, -3.0, 0.1), DomainError);
    CurvePoint degenerate{2, -2.0, 2.0, 0.5, 0.5 + 1e-9, 0.0, 0.0};
    CHECK_THROWS_AS(q_prime(degenerate), DegenerateError);
}

}
