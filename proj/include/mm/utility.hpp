#pragma once

#include <string>

#include "mm/types.hpp"

namespace mm {

// gamma in the HARA family, with explicit limit tags. The tagged cases
// dispatch to closed forms (log and negative exponential); numerically
// evaluating the generic formula near them is refused at construction.
enum class GammaKind { Finite, LogLimit, ExpLimit };

struct HaraParams {
    GammaKind kind = GammaKind::Finite;
    double gamma = 2.0;  // meaningful only for Finite
    double alpha = 1.0;
    double M = 0.0;

    static HaraParams finite(double gamma, double alpha, double M);
    static HaraParams log_limit(double alpha, double M);  // u = log(M + alpha m)
    static HaraParams exp_limit(double alpha);            // u = -exp(-alpha m)
};

enum class BoundCondition { DomainBoundedBelow, RangeBoundedAboveNotBelow, None };

struct BoundednessVerdict {
    bool bounded = false;
    BoundCondition satisfied_condition = BoundCondition::None;
};

// A concrete utility function of money: continuous and strictly increasing on
// an open interval domain.
class UtilityDescriptor {
public:
    enum class Family { Hara, LogShift, NegExp, Linear };

    static UtilityDescriptor hara(const HaraParams& h);
    static UtilityDescriptor log_shift(double b);  // u = log(b + m)
    static UtilityDescriptor neg_exp(double alpha);
    static UtilityDescriptor linear(double alpha);  // u = alpha m - 1

    Family family() const { return family_; }
    const HaraParams& hara_params() const { return hara_; }
    double shift_b() const { return b_; }
    double alpha() const { return alpha_; }

    double domain_lower() const { return dom_lo_; }  // open bound, -inf allowed
    double domain_upper() const { return dom_hi_; }
    double range_lower() const { return rng_lo_; }
    double range_upper() const { return rng_hi_; }
    bool in_domain(double m) const { return m > dom_lo_ && m < dom_hi_; }

    // gamma < 0 descriptors violate nonsatiation (domain bounded above);
    // they are constructible for analysis but refused as market makers.
    bool market_safe() const;

    double eval(double m) const;
    double prime(double m) const;
    double second(double m) const;
    double inverse(double v) const;
    // inverse of the (strictly decreasing) marginal utility, v > 0
    double prime_inverse(double v) const;
    double risk_tolerance(double m) const;  // -u'/u''

    std::string describe() const;

private:
    UtilityDescriptor() = default;
    Family family_ = Family::Linear;
    HaraParams hara_{};
    double b_ = 1.0;      // LogShift
    double alpha_ = 1.0;  // NegExp / Linear
    double dom_lo_ = 0, dom_hi_ = 0, rng_lo_ = 0, rng_hi_ = 0;
};

BoundednessVerdict classify_bounded_loss(const UtilityDescriptor& d);

// Eq-style risk-neutral prices: p_i = pi_i u'(m_i) / sum_j pi_j u'(m_j).
ProbVector risk_neutral_prices(const UtilityDescriptor& d, const ProbVector& pi,
                               const WealthVector& m);

}  // namespace mm
