#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mm/cost.hpp"

namespace mm {

struct TradeRecord {
    QuantityVector delta;
    double payment = 0.0;
    std::vector<double> prices_before;
    std::vector<double> prices_after;
    std::uint64_t seq = 0;  // monotone sequence number, not wall-clock time
};

// Immutable snapshot of a market. Mutation produces a new state; a single
// market admits one writer at a time.
struct MarketState {
    QuantityVector quantities;
    double collected = 0.0;  // cost(quantities) under the C(0)=0 normalization
    double k = 0.0;          // expected-utility constant, when utility-backed
    std::vector<TradeRecord> trade_log;
    int resolved_outcome = -1;  // >= 0 once resolved; further trades rejected

    bool resolved() const { return resolved_outcome >= 0; }
    static MarketState fresh(const CostFunction& cf);
};

WealthVector wealth_from_state(const MarketState& s);

// Applies delta, charging cost(q+delta) - cost(q). Rejected atomically when
// the new state is outside the cost function's domain or valid-price region.
std::pair<MarketState, TradeRecord> trade(const CostFunction& cf, const MarketState& s,
                                          const QuantityVector& delta);

// The Eq-10 trader best response: trade until prices equal the belief r.
// lmsr / exp_utility use the log-ratio closed form; quadratic is linear;
// utility-backed kinds invert the marginal-utility conditions with the
// translation component pinned at delta_N = 0.
std::pair<MarketState, TradeRecord> move_to_belief(const CostFunction& cf, const MarketState& s,
                                                   const ProbVector& r);

// Delta only, without applying it.
QuantityVector belief_delta(const CostFunction& cf, const QuantityVector& q, const ProbVector& r);

// Replays the trade log from the zero state; used by persistence tests.
MarketState replay(const CostFunction& cf, const std::vector<TradeRecord>& log);

}  // namespace mm
