#pragma once

#include <optional>

#include "mm/types.hpp"
#include "mm/utility.hpp"

namespace mm {

struct SolverConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    int max_iter = 200;
    double bracket_growth = 2.0;
};

// Root of sum_j pi_j u(C - q_j) = k in C (unique: the left side is strictly
// increasing). Bracketed safeguarded Newton with bisection fallback.
double implicit_cost_solve(const UtilityDescriptor& u, const ProbVector& pi, double k,
                           const QuantityVector& q, const SolverConfig& cfg = {});

// Constant expected-utility level implied by an initial wealth vector.
double initial_k(const UtilityDescriptor& u, const ProbVector& pi, const WealthVector& m0);

// Cost-function formulation of a market maker. cost() is normalized so that
// cost(0) = 0; raw_cost() is the unnormalized closed form (the two differ by
// a constant, so payments are unaffected).
class CostFunction {
public:
    enum class Kind { Lmsr, Quadratic, LogUtility2, ExpUtility, Implicit };

    static CostFunction lmsr(double b, std::size_t n);
    static CostFunction quadratic(double b, std::size_t n);
    static CostFunction log_utility_2(double b);  // two outcomes, uniform weights
    static CostFunction exp_utility(double alpha, const ProbVector& weights);
    static CostFunction implicit(const UtilityDescriptor& u, const ProbVector& weights,
                                 double k, const SolverConfig& cfg = {});

    Kind kind() const { return kind_; }
    std::size_t outcomes() const { return n_; }
    double b() const { return b_; }
    double alpha() const { return alpha_; }
    double level_k() const { return k_; }
    const ProbVector& weights() const { return weights_; }
    const UtilityDescriptor& utility() const;
    bool has_utility() const { return u_.has_value(); }
    double normalization_offset() const { return offset_; }
    const SolverConfig& solver_config() const { return cfg_; }

    // Symmetric in the sense of permutation-invariant cost (uniform weights).
    bool symmetric() const;

    double raw_cost(const QuantityVector& q) const;
    double cost(const QuantityVector& q) const { return raw_cost(q) - offset_; }
    ProbVector prices(const QuantityVector& q) const;

    // Single-security axis q^i = (0,..,q_i,..,0): price and own-slope of
    // outcome i. Quadratic prices clamp to [0,1] beyond the valid region
    // (used by the loss integral).
    double axis_price(double qi) const;
    double axis_slope(double qi) const;

    // Instantaneous liquidity 1/(dp_i/dq_i) at q; analytic where available,
    // central finite difference otherwise.
    double liquidity(const QuantityVector& q, std::size_t i) const;

private:
    CostFunction() = default;
    Kind kind_ = Kind::Lmsr;
    std::size_t n_ = 2;
    double b_ = 1.0;
    double alpha_ = 1.0;
    ProbVector weights_ = ProbVector::uniform(2);
    std::optional<UtilityDescriptor> u_;
    double k_ = 0.0;
    double offset_ = 0.0;
    SolverConfig cfg_{};
};

}  // namespace mm
