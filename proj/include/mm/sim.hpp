#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mm/spec.hpp"

namespace mm {

struct BeliefModel {
    std::vector<double> true_outcome_prob;
    double sigma = 0.0;  // logit-space Gaussian noise scale
};

struct SimConfig {
    MarketMakerSpec maker;
    int n_traders = 0;
    BeliefModel belief_model;
    std::uint64_t seed = 0;
    int rounds = 1;
};

struct SimResult {
    std::vector<double> final_prices;
    std::vector<double> realized_loss_per_outcome;  // q_j - collected
    double worst_case_bound = 0.0;                  // +infinity when unbounded
    std::vector<std::vector<double>> trader_pnl;    // [trader][outcome]
    double collected = 0.0;
    int skipped = 0;  // trades rejected (unattainable targets)

    std::string to_json() const;
};

// Round-robin trader arrivals; each trader perturbs the truth in logit space
// (sigma = 0 reproduces it exactly), renormalizes with entries floored at
// 0.01, and executes move_to_belief. Deterministic under seed.
SimResult simulate(const SimConfig& cfg);

SimConfig sim_config_from_json(const std::string& text);

}  // namespace mm
