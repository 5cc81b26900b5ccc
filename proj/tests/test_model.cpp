#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ergm/errors.hpp"
#include "ergm/model.hpp"

using namespace ergm;

TEST_SUITE("model") {

TEST_CASE("ell at reference points") {
    CHECK(ell(0.5, ModelParams(0, 0, 2)) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
    CHECK(ell(0.0, ModelParams(1.7, -0.3, 3)) == 0.0);
    CHECK(ell(0.5, ModelParams(-2, 2, 2)) == doctest::Approx(-1 + 0.5 + std::numbers::ln2).epsilon(1e-15));
    // x = 1 keeps only b1 + b2.
    CHECK(ell(1.0, ModelParams(0.4, 0.9, 2)) == doctest::Approx(1.3).epsilon(1e-15));
}

TEST_CASE("ell_deriv closed forms") {
    CHECK(ell_deriv(0.5, ModelParams(0, 0, 2), 2) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(ell_deriv(0.5, ModelParams(1, 0, 2), 1) == doctest::Approx(1.0).epsilon(1e-15));
    const CriticalPoint cp = critical_point(2);
    CHECK(ell_deriv(0.5, ModelParams(cp.beta1c, cp.beta2c, 2), 4) == doctest::Approx(-32.0).epsilon(1e-13));
}

TEST_CASE("critical point formula") {
    const CriticalPoint c2 = critical_point(2);
    CHECK(c2.beta1c == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(c2.beta2c == doctest::Approx(2.0).epsilon(1e-15));
    const CriticalPoint c3 = critical_point(3);
    CHECK(c3.beta1c == doctest::Approx(std::log(2.0) - 1.5).epsilon(1e-15));
    CHECK(c3.beta2c == doctest::Approx(1.125).epsilon(1e-15));
    for (int p = 2; p <= 6; ++p) {
        const CriticalPoint cp = critical_point(p);
        const ModelParams params(cp.beta1c, cp.beta2c, p);
        const double x = params.critical_x();
        CHECK(std::abs(ell_deriv(x, params, 1)) < 1e-12);
        CHECK(std::abs(ell_deriv(x, params, 2)) < 1e-12);
        CHECK(std::abs(ell_deriv(x, params, 3)) < 1e-10);
        CHECK(ell_deriv(x, params, 4) ==
              doctest::Approx(-std::pow(p, 5) / ((p - 1.0) * (p - 1.0))).epsilon(1e-12));
    }
}

TEST_CASE("derivatives match central differences of the next lower order") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> beta(-3.0, 3.0);
    std::uniform_real_distribution<double> xs(0.05, 0.95);
    std::uniform_int_distribution<int> ps(2, 4);
    const double h = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const ModelParams params(beta(gen), beta(gen), ps(gen));
        const double x = xs(gen);
        for (int k = 1; k <= 6; ++k) {
            auto lower = [&](double y) { return k == 1 ? ell(y, params) : ell_deriv(y, params, k - 1); };
            const double fd = (lower(x + h) - lower(x - h)) / (2 * h);
            const double an = ell_deriv(x, params, k);
            worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("reference classifications") {
    const PhaseClassification a = find_maximizers(ModelParams(0, 0, 2));
    REQUIRE(a.off_curve());
    CHECK(std::get<OffCurve>(a.variant).x_star == doctest::Approx(0.5).epsilon(1e-12));

    const PhaseClassification b = find_maximizers(ModelParams(-2.5, 2.5, 2));
    REQUIRE(b.on_curve());
    const auto& oc = std::get<OnCurve>(b.variant);
    CHECK(oc.x1_star == doctest::Approx(0.1450).epsilon(1e-3));
    CHECK(oc.x2_star == doctest::Approx(0.8550).epsilon(1e-3));
    CHECK(std::abs(oc.x1_star + oc.x2_star - 1.0) < 1e-11);
    CHECK(b.regime_name() == "on-curve");

    const PhaseClassification c = find_maximizers(ModelParams(-2, 2, 2));
    REQUIRE(c.critical());
    CHECK(std::get<Critical>(c.variant).x_star == 0.5);
    CHECK(c.maximizers().size() == 1);
}

TEST_CASE("maximizers are stationary with negative curvature") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> beta(-3.0, 3.0);
    const MaximizerOptions opts;
    for (int trial = 0; trial < 300; ++trial) {
        const ModelParams params(beta(gen), beta(gen), 2 + trial % 3);
        const PhaseClassification pc = find_maximizers(params, opts);
        if (pc.critical()) continue;
        for (double x : pc.maximizers()) {
            REQUIRE(x > 0.0);
            REQUIRE(x < 1.0);
            const double d2 = ell_deriv(x, params, 2);
            CHECK(d2 < 0.0);
            CHECK(std::abs(ell_deriv(x, params, 1)) < 10 * opts.tol * std::abs(d2) + 1e-13);
        }
        // Global: no grid point beats the reported maximum.
        for (int k = 0; k <= 400; ++k) {
            CHECK(ell(k / 400.0, params) <= pc.ell_value + 1e-12);
        }
    }
}

TEST_CASE("p=2 antisymmetric line gives mirror-symmetric maximizers") {
    for (double b1 : {-0.5, -1.0, -1.9, -2.3, -3.0, -4.5, 0.7}) {
        const PhaseClassification pc = find_maximizers(ModelParams(b1, -b1, 2));
        if (pc.off_curve()) {
            CHECK(std::get<OffCurve>(pc.variant).x_star == doctest::Approx(0.5).epsilon(1e-12));
        } else if (pc.on_curve()) {
            const auto& oc = std::get<OnCurve>(pc.variant);
            CHECK(std::abs(oc.x1_star + oc.x2_star - 1.0) < 1e-11);
        }
    }
}

TEST_CASE("below the critical beta2 ell is strictly concave") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> b1(-5.0, 5.0);
    std::uniform_real_distribution<double> frac(-2.0, 0.999);
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 2 + trial % 3;
        const double b2 = critical_point(p).beta2c * frac(gen);
        const ModelParams params(b1(gen), b2, p);
        CHECK(find_maximizers(params).off_curve());
        for (int k = 1; k < 1000; ++k) {
            CHECK(ell_deriv(k / 1000.0, params, 2) < 0.0);
        }
    }
}

TEST_CASE("local maxima structure above the critical beta2") {
    const LocalMaxima lm = local_maxima(ModelParams(-2.5, 2.5, 2));
    REQUIRE(lm.inflection_lo);
    REQUIRE(lm.inflection_hi);
    REQUIRE(lm.left);
    REQUIRE(lm.right);
    CHECK(*lm.left < *lm.inflection_lo);
    CHECK(*lm.inflection_lo < 0.5);
    CHECK(*lm.inflection_hi > 0.5);
    CHECK(*lm.right > *lm.inflection_hi);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(ModelParams(0, 0, 1), DomainError);
    CHECK_THROWS_AS(ModelParams(std::numeric_limits<double>::quiet_NaN(), 0, 2), DomainError);
    CHECK_THROWS_AS(ModelParams(0, std::numeric_limits<double>::infinity(), 2), DomainError);
    CHECK_THROWS_AS(critical_point(1), DomainError);
    const ModelParams params(0, 0, 2);
    CHECK_THROWS_AS(ell(-0.1, params), DomainError);
    CHECK_THROWS_AS(ell(1.1, params), DomainError);
    CHECK_THROWS_AS(ell_deriv(0.0, params, 1), DomainError);
    CHECK_THROWS_AS(ell_deriv(1.0, params, 2), DomainError);
    CHECK_THROWS_AS(ell_deriv(0.5, params, 0), DomainError);
    CHECK_THROWS_AS(ell_deriv(0.5, params, 7), DomainError);
    MaximizerOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(find_maximizers(params, bad), DomainError);
}

}
