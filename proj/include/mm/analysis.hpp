#pragma once

#include <string>
#include <vector>

#include "mm/cost.hpp"

namespace mm {

struct LossEstimate {
    double value = 0.0;  // +infinity signals unbounded loss
    double error_estimate = 0.0;
    double truncation_point = 0.0;
};

struct LossLiquidityReport {
    double worst_case_loss = 0.0;
    double loss_error_estimate = 0.0;
    double min_liquidity = 0.0;
    double theorem9_bound = 0.0;  // (N-1)^2 rho / (2 N^2)
    bool bound_satisfied = false;

    std::string to_json() const;
};

struct LiquidityCurve {
    struct Sample {
        double q1;
        double price;
        double liquidity;
    };
    std::vector<Sample> samples;

    std::string to_csv() const;  // header: q1,price,liquidity
};

struct DominanceInterval {
    double p_lo;
    double p_hi;
    int winner;  // 0 = first maker, 1 = second maker, -1 = tie
};

// Instantaneous liquidity 1/(dp_i/dq_i) at q.
double instantaneous_liquidity(const CostFunction& cf, const QuantityVector& q, std::size_t i);

// Worst-case loss by adaptive quadrature of the single-axis price integral,
// truncated where the integrand falls below 1e-10 and corrected by a
// (1 - p(Q)) * Q tail estimate. Requires a symmetric maker.
LossEstimate worst_case_loss(const CostFunction& cf, const SolverConfig& cfg = {});

// Minimum axis liquidity (golden-section plus endpoint checks), the loss
// lower bound, and whether the maker satisfies it.
LossLiquidityReport theorem9_check(const CostFunction& cf);

// Samples liquidity for both makers along the axis parameterized by price
// and returns maximal dominance intervals. Requires equal worst-case loss
// within 1e-3 (the theorem's hypothesis).
std::vector<DominanceInterval> liquidity_dominance_scan(const CostFunction& a,
                                                        const CostFunction& b, double p_lo,
                                                        double p_hi, int samples);

// Tabulates (q1, p1, rho1) on a uniform grid over [0, q_max]; N = 2 only.
LiquidityCurve figure2_curve(const CostFunction& cf, double q_max, int samples);

// Inverts the axis price function p(q) = target by bisection.
double axis_quantity_for_price(const CostFunction& cf, double target);

}  // namespace mm
