#include <cmath>

#include <doctest.h>

#include "mm/sim.hpp"

using namespace mm;

namespace {

SimConfig lmsr_config(double b, double sigma, int traders, int rounds, std::uint64_t seed) {
    return SimConfig{MarketMakerSpec{CostMaker{CostFunction::lmsr(b, 2)}}, traders,
                     BeliefModel{{0.8, 0.2}, sigma}, seed, rounds};
}

}  // namespace

TEST_CASE("single fully-informed trader moves prices to the truth") {
    const auto res = simulate(lmsr_config(100.0, 0.0, 1, 1, 0));
    CHECK(res.final_prices[0] == doctest::Approx(0.8).epsilon(1e-9));
    CHECK(res.final_prices[1] == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(res.skipped == 0);
}

TEST_CASE("no traders, no movement, no loss") {
    const auto res = simulate(lmsr_config(100.0, 0.3, 0, 5, 1));
    CHECK(res.final_prices[0] == doctest::Approx(0.5));
    CHECK(res.collected == 0.0);
    for (double l : res.realized_loss_per_outcome) CHECK(l == 0.0);
}

TEST_CASE("seed determinism is bitwise on the result document") {
    const auto a = simulate(lmsr_config(100.0, 0.2, 50, 3, 42));
    const auto b = simulate(lmsr_config(100.0, 0.2, 50, 3, 42));
    CHECK(a.to_json() == b.to_json());
    const auto c = simulate(lmsr_config(100.0, 0.2, 50, 3, 43));
    CHECK(a.to_json() != c.to_json());
}

TEST_CASE("realized loss never exceeds the worst-case bound") {
    const auto res = simulate(lmsr_config(100.0, 0.2, 50, 1, 42));
    CHECK(res.worst_case_bound == doctest::Approx(100.0 * std::log(2.0)).epsilon(1e-6));
    for (double l : res.realized_loss_per_outcome) CHECK(l <= res.worst_case_bound + 1e-6);
}

TEST_CASE("loss-bound safety across maker kinds and seeds") {
    const auto u = UtilityDescriptor::log_shift(25.0);
    const MarketMakerSpec makers[] = {
        MarketMakerSpec{CostMaker{CostFunction::lmsr(10.0, 3)}},
        MarketMakerSpec{CostMaker{CostFunction::quadratic(30.0, 2)}},
        MarketMakerSpec{CostMaker{CostFunction::log_utility_2(20.0)}},
        MarketMakerSpec{
            CostMaker{CostFunction::exp_utility(0.05, ProbVector::validate(
                                                          std::vector<double>{0.3, 0.7}, true))}},
        MarketMakerSpec{UtilityMaker{u, ProbVector::uniform(2)}},
    };
    for (const auto& m : makers) {
        std::vector<double> truth(m.outcomes(), 1.0 / static_cast<double>(m.outcomes()));
        truth[0] += 0.2;
        truth[1] -= 0.2;
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const SimConfig cfg{m, 8, BeliefModel{truth, 0.5}, seed, 2};
            const auto res = simulate(cfg);
            for (double l : res.realized_loss_per_outcome)
                CHECK(l <= res.worst_case_bound + 1e-6);
        }
    }
}

TEST_CASE("money conservation per outcome") {
    const auto res = simulate(lmsr_config(50.0, 0.4, 20, 2, 7));
    for (std::size_t j = 0; j < 2; ++j) {
        double traders = 0.0;
        for (const auto& pnl : res.trader_pnl) traders += pnl[j];
        const double maker = -res.realized_loss_per_outcome[j];
        CHECK(maker + traders == doctest::Approx(0.0).epsilon(1e-8));
    }
}

TEST_CASE("unbounded linear maker: loss grows without bound under one-sided flow") {
    const auto u = UtilityDescriptor::linear(1.0);
    CHECK_FALSE(classify_bounded_loss(u).bounded);
    const auto cf = CostFunction::implicit(u, ProbVector::uniform(2), u.eval(0.0));
    auto s = MarketState::fresh(cf);
    double prev_loss = 0.0;
    for (int i = 0; i < 20; ++i) {
        auto [next, rec] = trade(cf, s, QuantityVector(std::vector<double>{25.0, 0.0}));
        s = std::move(next);
        const double loss = s.quantities[0] - s.collected;
        CHECK(loss > prev_loss);  // strictly monotone growth, no plateau
        prev_loss = loss;
    }
    CHECK(prev_loss > 200.0);  // exceeds any a-priori budget of this scale
}

TEST_CASE("config json round-trip drives simulate") {
    const char* doc = R"({
      "maker": {"family":"cost","kind":"lmsr","b":100.0,"n":2},
      "n_traders": 3, "rounds": 2, "seed": 9,
      "belief_model": {"true_outcome_prob": [0.7, 0.3], "sigma": 0.1}
    })";
    const auto cfg = sim_config_from_json(doc);
    CHECK(cfg.n_traders == 3);
    CHECK(cfg.rounds == 2);
    const auto res = simulate(cfg);
    CHECK(res.trader_pnl.size() == 3);
    CHECK(res.final_prices.size() == 2);
    CHECK_THROWS_AS(sim_config_from_json("{}"), MarketError);
}
