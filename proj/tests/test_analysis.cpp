#include <cmath>
#include <random>

#include <doctest.h>

#include "mm/analysis.hpp"

using namespace mm;

TEST_CASE("instantaneous liquidity point values at the uniform start") {
    CHECK(instantaneous_liquidity(CostFunction::lmsr(100.0, 2), QuantityVector::zeros(2), 0) ==
          doctest::Approx(400.0).epsilon(1e-10));  // b / (p (1-p))
    CHECK(instantaneous_liquidity(CostFunction::quadratic(100.0, 2), QuantityVector::zeros(2), 0) ==
          doctest::Approx(400.0).epsilon(1e-10));  // 2 N b / (N-1)
    CHECK(instantaneous_liquidity(CostFunction::log_utility_2(50.0), QuantityVector::zeros(2), 0) ==
          doctest::Approx(200.0).epsilon(1e-10));  // 4 b at the origin
}

TEST_CASE("quadrature reproduces the lmsr loss b log N") {
    for (double b : {1.0, 10.0, 100.0}) {
        for (std::size_t n : {2u, 3u, 5u}) {
            const auto est = worst_case_loss(CostFunction::lmsr(b, n));
            CHECK(est.value ==
                  doctest::Approx(b * std::log(static_cast<double>(n))).epsilon(1e-6));
        }
    }
}

TEST_CASE("quadrature reproduces the quadratic loss (N-1) b / N") {
    for (double b : {1.0, 10.0}) {
        for (std::size_t n : {2u, 4u}) {
            const auto est = worst_case_loss(CostFunction::quadratic(b, n));
            const double N = static_cast<double>(n);
            CHECK(est.value == doctest::Approx((N - 1.0) * b / N).epsilon(1e-6));
        }
    }
}

TEST_CASE("loss is axis-index independent for the implicit kind") {
    const auto u = UtilityDescriptor::log_shift(20.0);
    const auto cf = CostFunction::implicit(u, ProbVector::uniform(3), u.eval(0.0));
    // price along the first and last axes agree, so one integral serves all
    QuantityVector first = QuantityVector::zeros(3), last = QuantityVector::zeros(3);
    first[0] = 7.0;
    last[2] = 7.0;
    CHECK(cf.prices(first)[0] == doctest::Approx(cf.prices(last)[2]).epsilon(1e-8));
    // and a non-uniform maker is refused
    const auto skew =
        CostFunction::exp_utility(0.1, ProbVector::validate(std::vector<double>{0.3, 0.7}));
    CHECK_THROWS_AS(worst_case_loss(skew), MarketError);
}

TEST_CASE("figure 2: equal-loss pair and liquidity values") {
    const double b_lmsr = 50.0 / std::log(2.0);  // 72.1348: lmsr loss = 50
    const auto lmsr = CostFunction::lmsr(b_lmsr, 2);
    const auto logu = CostFunction::log_utility_2(50.0);

    CHECK(worst_case_loss(lmsr).value == doctest::Approx(50.0).epsilon(1e-5));
    CHECK(worst_case_loss(logu).value == doctest::Approx(50.0).epsilon(1e-4));

    auto rho_at = [](const CostFunction& cf, double p) {
        return 1.0 / cf.axis_slope(axis_quantity_for_price(cf, p));
    };
    CHECK(rho_at(lmsr, 0.5) == doctest::Approx(4.0 * b_lmsr).epsilon(0.005));   // 288.54
    CHECK(rho_at(logu, 0.5) == doctest::Approx(200.0).epsilon(0.005));
    CHECK(rho_at(lmsr, 0.9) == doctest::Approx(b_lmsr / 0.09).epsilon(0.005));  // 801.5
    CHECK(rho_at(logu, 0.9) == doctest::Approx(925.93).epsilon(0.005));
}

TEST_CASE("dominance scan finds the figure-2 crossing") {
    const auto lmsr = CostFunction::lmsr(50.0 / std::log(2.0), 2);
    const auto logu = CostFunction::log_utility_2(50.0);
    const auto intervals = liquidity_dominance_scan(lmsr, logu, 0.5, 0.9, 201);
    REQUIRE(intervals.size() >= 2);
    CHECK(intervals.front().winner == 0);  // lmsr more liquid near 0.5
    CHECK(intervals.back().winner == 1);   // log utility wins near 0.9
    const double crossing = intervals.front().p_hi;
    CHECK(crossing > 0.5);
    CHECK(crossing < 0.9);

    // unequal losses violate the theorem hypothesis
    CHECK_THROWS_AS(liquidity_dominance_scan(CostFunction::lmsr(100.0, 2), logu, 0.5, 0.9, 11),
                    MarketError);
    // identical makers tie everywhere
    const auto tie = liquidity_dominance_scan(lmsr, CostFunction::lmsr(50.0 / std::log(2.0), 2),
                                              0.5, 0.9, 21);
    REQUIRE(tie.size() == 1);
    CHECK(tie.front().winner == -1);
}

TEST_CASE("theorem 9 bound holds for every symmetric bounded maker") {
    const auto u = UtilityDescriptor::log_shift(30.0);
    const CostFunction cfs[] = {
        CostFunction::lmsr(10.0, 2),
        CostFunction::lmsr(25.0, 4),
        CostFunction::quadratic(10.0, 2),
        CostFunction::quadratic(40.0, 3),
        CostFunction::log_utility_2(50.0),
        CostFunction::exp_utility(0.05, ProbVector::uniform(3)),
        CostFunction::implicit(u, ProbVector::uniform(2), u.eval(0.0)),
    };
    for (const auto& cf : cfs) {
        const auto rep = theorem9_check(cf);
        CHECK(rep.bound_satisfied);
        CHECK(rep.worst_case_loss >= rep.theorem9_bound - 1e-6);
    }
    // N = 2: the bound reads rho/8; the quadratic attains it exactly
    const auto quad = theorem9_check(CostFunction::quadratic(10.0, 2));
    CHECK(quad.theorem9_bound == doctest::Approx(quad.min_liquidity / 8.0).epsilon(1e-12));
    CHECK(quad.worst_case_loss == doctest::Approx(quad.theorem9_bound).epsilon(1e-6));
}

TEST_CASE("axis price is monotone and invertible") {
    std::mt19937_64 rng(71);
    const CostFunction cfs[] = {
        CostFunction::lmsr(15.0, 3),
        CostFunction::quadratic(20.0, 2),
        CostFunction::log_utility_2(10.0),
    };
    for (const auto& cf : cfs) {
        double prev = cf.axis_price(-20.0);
        for (double q = -19.0; q <= 20.0; q += 1.0) {
            const double p = cf.axis_price(q);
            CHECK(p >= prev - 1e-12);
            prev = p;
        }
        for (double target : {0.2, 0.5, 0.77}) {
            const double q = axis_quantity_for_price(cf, target);
            CHECK(cf.axis_price(q) == doctest::Approx(target).epsilon(1e-9));
        }
    }
}

TEST_CASE("figure2_curve tabulation matches pointwise evaluation") {
    const auto cf = CostFunction::lmsr(72.1348, 2);
    const auto curve = figure2_curve(cf, 400.0, 101);
    REQUIRE(curve.samples.size() == 101);
    for (std::size_t i = 0; i < curve.samples.size(); i += 10) {
        const auto& s = curve.samples[i];
        QuantityVector q = QuantityVector::zeros(2);
        q[0] = s.q1;
        CHECK(s.price == doctest::Approx(cf.axis_price(s.q1)).epsilon(1e-12));
        CHECK(s.liquidity == doctest::Approx(cf.liquidity(q, 0)).epsilon(1e-10));
    }
    const auto csv = curve.to_csv();
    CHECK(csv.rfind("q1,price,liquidity\n", 0) == 0);
}

TEST_CASE("off-axis liquidity stays positive and finite") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    const auto cf = CostFunction::lmsr(20.0, 3);
    for (int i = 0; i < 100; ++i) {
        QuantityVector q = QuantityVector::zeros(3);
        for (std::size_t j = 0; j < 3; ++j) q[j] = d(rng);
        for (std::size_t j = 0; j < 3; ++j) {
            const double rho = instantaneous_liquidity(cf, q, j);
            CHECK(rho > 0.0);
            CHECK(std::isfinite(rho));
        }
    }
}
