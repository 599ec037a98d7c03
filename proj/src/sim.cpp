#include "mm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "mm/analysis.hpp"

namespace mm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sup_q (q - C(q e_j)) for one axis: evaluate where the axis price has
// saturated and add the (1 - p) * Q tail of the remaining increase.
double axis_loss_bound(const CostFunction& cf, std::size_t j) {
    const std::size_t n = cf.outcomes();
    auto price_at = [&](double q) {
        QuantityVector qv = QuantityVector::zeros(n);
        qv[j] = q;
        return cf.prices(qv)[j];
    };
    double q = 1.0;
    int it = 0;
    while (1.0 - price_at(q) > 1e-10) {
        q *= 2.0;
        if (++it > 120) return kInf;
    }
    QuantityVector qv = QuantityVector::zeros(n);
    qv[j] = q;
    return q - cf.cost(qv) + (1.0 - price_at(q)) * q;
}

double loss_bound(const MarketMakerSpec& spec, const CostFunction& cf) {
    if (spec.is_utility() &&
        !classify_bounded_loss(spec.utility().u).bounded)
        return kInf;
    if (cf.symmetric()) {
        const LossEstimate est = worst_case_loss(cf);
        return est.value;
    }
    double bound = 0.0;
    for (std::size_t j = 0; j < cf.outcomes(); ++j) bound = std::max(bound, axis_loss_bound(cf, j));
    return bound;
}

ProbVector draw_belief(const std::vector<double>& truth, double sigma, std::mt19937_64& rng) {
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t n = truth.size();
    std::vector<double> logit(n);
    double mx = -kInf;
    for (std::size_t j = 0; j < n; ++j) {
        logit[j] = std::log(truth[j]) + sigma * noise(rng);
        mx = std::max(mx, logit[j]);
    }
    double s = 0.0;
    for (double& x : logit) {
        x = std::exp(x - mx);
        s += x;
    }
    double s2 = 0.0;
    for (double& x : logit) {
        x = std::max(x / s, 0.01);
        s2 += x;
    }
    for (double& x : logit) x /= s2;
    return ProbVector::validate(logit, true);
}

}  // namespace

SimResult simulate(const SimConfig& cfg) {
    if (cfg.n_traders < 0 || cfg.rounds < 0)
        fail(Err::InvalidParameter, "n_traders and rounds must be nonnegative");
    if (!(cfg.belief_model.sigma >= 0.0))
        fail(Err::InvalidParameter, "noise scale sigma must be >= 0");
    const ProbVector truth = ProbVector::validate(cfg.belief_model.true_outcome_prob, true);
    if (truth.size() != cfg.maker.outcomes())
        fail(Err::MismatchedOutcomes, "true_outcome_prob length must match the maker");

    const CostFunction cf = cfg.maker.to_cost_function();
    const std::size_t n = cf.outcomes();
    MarketState state = MarketState::fresh(cf);

    SimResult res;
    res.worst_case_bound = loss_bound(cfg.maker, cf);
    res.trader_pnl.assign(static_cast<std::size_t>(std::max(cfg.n_traders, 0)),
                          std::vector<double>(n, 0.0));

    std::mt19937_64 rng(cfg.seed);
    for (int round = 0; round < cfg.rounds; ++round) {
        for (int t = 0; t < cfg.n_traders; ++t) {
            const ProbVector r = draw_belief(truth.entries(), cfg.belief_model.sigma, rng);
            try {
                auto [next, rec] = move_to_belief(cf, state, r);
                state = std::move(next);
                for (std::size_t j = 0; j < n; ++j)
                    res.trader_pnl[static_cast<std::size_t>(t)][j] += rec.delta[j] - rec.payment;
            } catch (const MarketError&) {
                ++res.skipped;
            }
        }
    }

    res.final_prices = cf.prices(state.quantities).entries();
    res.collected = state.collected;
    res.realized_loss_per_outcome.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        res.realized_loss_per_outcome[j] = state.quantities[j] - state.collected;
    return res;
}

SimConfig sim_config_from_json(const std::string& text) {
    using nlohmann::json;
    try {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) fail(Err::MalformedDocument, "invalid JSON document");
        SimConfig cfg{spec_from_json(j.at("maker").dump()),
                      j.at("n_traders").get<int>(),
                      BeliefModel{j.at("belief_model").at("true_outcome_prob").get<std::vector<double>>(),
                                  j.at("belief_model").at("sigma").get<double>()},
                      j.at("seed").get<std::uint64_t>(),
                      j.at("rounds").get<int>()};
        return cfg;
    } catch (const json::exception& e) {
        fail(Err::MalformedDocument, std::string("sim config: ") + e.what());
    }
}

std::string SimResult::to_json() const {
    nlohmann::json j;
    j["final_prices"] = final_prices;
    j["realized_loss_per_outcome"] = realized_loss_per_outcome;
    j["worst_case_bound"] = std::isinf(worst_case_bound) ? nlohmann::json("inf")
                                                         : nlohmann::json(worst_case_bound);
    j["trader_pnl"] = trader_pnl;
    j["collected"] = collected;
    j["skipped"] = skipped;
    return j.dump();
}

}  // namespace mm
