#include "mm/utility.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGammaLogGuard = 1e-6;  // |gamma-1| below this: use the tag
constexpr double kGammaExpGuard = 1e6;   // |gamma| above this: use the tag
}  // namespace

HaraParams HaraParams::finite(double gamma, double alpha, double M) {
    if (!(alpha > 0.0)) fail(Err::InvalidParameter, "hara: alpha must be > 0");
    if (gamma == 0.0)
        fail(Err::InvalidParameter, "hara: gamma = 0 is the linear family; use UtilityDescriptor::linear");
    if (std::fabs(gamma - 1.0) < kGammaLogGuard)
        fail(Err::InvalidParameter, "hara: gamma too close to 1; use the log limit tag");
    if (std::fabs(gamma) > kGammaExpGuard)
        fail(Err::InvalidParameter, "hara: |gamma| too large; use the exp limit tag");
    return HaraParams{GammaKind::Finite, gamma, alpha, M};
}

HaraParams HaraParams::log_limit(double alpha, double M) {
    if (!(alpha > 0.0)) fail(Err::InvalidParameter, "hara: alpha must be > 0");
    if (!(M > 0.0)) fail(Err::InvalidParameter, "hara log limit: M must be > 0");
    return HaraParams{GammaKind::LogLimit, 1.0, alpha, M};
}

HaraParams HaraParams::exp_limit(double alpha) {
    if (!(alpha > 0.0)) fail(Err::InvalidParameter, "hara: alpha must be > 0");
    return HaraParams{GammaKind::ExpLimit, kInf, alpha, 0.0};
}

UtilityDescriptor UtilityDescriptor::hara(const HaraParams& h) {
    UtilityDescriptor d;
    d.family_ = Family::Hara;
    d.hara_ = h;
    d.alpha_ = h.alpha;
    switch (h.kind) {
        case GammaKind::LogLimit:
            d.dom_lo_ = -h.M / h.alpha;
            d.dom_hi_ = kInf;
            d.rng_lo_ = -kInf;
            d.rng_hi_ = kInf;
            break;
        case GammaKind::ExpLimit:
            d.dom_lo_ = -kInf;
            d.dom_hi_ = kInf;
            d.rng_lo_ = -kInf;
            d.rng_hi_ = 0.0;
            break;
        case GammaKind::Finite: {
            const double g = h.gamma;
            const double edge = -g * h.M / h.alpha;  // z = 0 boundary, excluded
            if (g > 0.0) {
                d.dom_lo_ = edge;
                d.dom_hi_ = kInf;
                if (g < 1.0) {
                    d.rng_lo_ = -1.0 / (1.0 - g);
                    d.rng_hi_ = kInf;
                } else {
                    d.rng_lo_ = -kInf;
                    d.rng_hi_ = 1.0 / (g - 1.0);
                }
            } else {  // domain bounded above: nonsatiation violated
                d.dom_lo_ = -kInf;
                d.dom_hi_ = edge;
                d.rng_lo_ = -kInf;
                d.rng_hi_ = -1.0 / (1.0 - g);
            }
            break;
        }
    }
    return d;
}

UtilityDescriptor UtilityDescriptor::log_shift(double b) {
    if (!(b > 0.0)) fail(Err::InvalidParameter, "log_shift: b must be > 0");
    UtilityDescriptor d;
    d.family_ = Family::LogShift;
    d.b_ = b;
    d.dom_lo_ = -b;
    d.dom_hi_ = kInf;
    d.rng_lo_ = -kInf;
    d.rng_hi_ = kInf;
    return d;
}

UtilityDescriptor UtilityDescriptor::neg_exp(double alpha) {
    if (!(alpha > 0.0)) fail(Err::InvalidParameter, "neg_exp: alpha must be > 0");
    UtilityDescriptor d;
    d.family_ = Family::NegExp;
    d.alpha_ = alpha;
    d.dom_lo_ = -kInf;
    d.dom_hi_ = kInf;
    d.rng_lo_ = -kInf;
    d.rng_hi_ = 0.0;
    return d;
}

UtilityDescriptor UtilityDescriptor::linear(double alpha) {
    if (!(alpha > 0.0)) fail(Err::InvalidParameter, "linear: alpha must be > 0");
    UtilityDescriptor d;
    d.family_ = Family::Linear;
    d.alpha_ = alpha;
    d.dom_lo_ = -kInf;
    d.dom_hi_ = kInf;
    d.rng_lo_ = -kInf;
    d.rng_hi_ = kInf;
    return d;
}

bool UtilityDescriptor::market_safe() const {
    if (family_ == Family::Hara && hara_.kind == GammaKind::Finite && hara_.gamma < 0.0)
        return false;
    return true;
}

namespace {
[[noreturn]] void domain_err(double m) {
    fail(Err::DomainViolation, "wealth " + std::to_string(m) + " outside utility domain");
}
}  // namespace

double UtilityDescriptor::eval(double m) const {
    if (!in_domain(m)) domain_err(m);
    switch (family_) {
        case Family::LogShift: return std::log(b_ + m);
        case Family::NegExp: return -std::exp(-alpha_ * m);
        case Family::Linear: return alpha_ * m - 1.0;
        case Family::Hara: break;
    }
    switch (hara_.kind) {
        case GammaKind::LogLimit: return std::log(hara_.M + hara_.alpha * m);
        case GammaKind::ExpLimit: return -std::exp(-hara_.alpha * m);
        case GammaKind::Finite: {
            const double g = hara_.gamma;
            const double z = hara_.M + hara_.alpha / g * m;
            return (g * std::pow(z, 1.0 - g) - 1.0) / (1.0 - g);
        }
    }
    domain_err(m);
}

double UtilityDescriptor::prime(double m) const {
    if (!in_domain(m)) domain_err(m);
    switch (family_) {
        case Family::LogShift: return 1.0 / (b_ + m);
        case Family::NegExp: return alpha_ * std::exp(-alpha_ * m);
        case Family::Linear: return alpha_;
        case Family::Hara: break;
    }
    switch (hara_.kind) {
        case GammaKind::LogLimit: return hara_.alpha / (hara_.M + hara_.alpha * m);
        case GammaKind::ExpLimit: return hara_.alpha * std::exp(-hara_.alpha * m);
        case GammaKind::Finite: {
            const double g = hara_.gamma;
            const double z = hara_.M + hara_.alpha / g * m;
            return hara_.alpha * std::pow(z, -g);
        }
    }
    domain_err(m);
}

double UtilityDescriptor::second(double m) const {
    if (!in_domain(m)) domain_err(m);
    switch (family_) {
        case Family::LogShift: return -1.0 / ((b_ + m) * (b_ + m));
        case Family::NegExp: return -alpha_ * alpha_ * std::exp(-alpha_ * m);
        case Family::Linear: return 0.0;
        case Family::Hara: break;
    }
    switch (hara_.kind) {
        case GammaKind::LogLimit: {
            const double z = hara_.M + hara_.alpha * m;
            return -hara_.alpha * hara_.alpha / (z * z);
        }
        case GammaKind::ExpLimit:
            return -hara_.alpha * hara_.alpha * std::exp(-hara_.alpha * m);
        case GammaKind::Finite: {
            const double g = hara_.gamma;
            const double z = hara_.M + hara_.alpha / g * m;
            return -hara_.alpha * hara_.alpha * std::pow(z, -g - 1.0);
        }
    }
    domain_err(m);
}

double UtilityDescriptor::inverse(double v) const {
    if (!(v > rng_lo_ && v < rng_hi_))
        fail(Err::RangeViolation, "value " + std::to_string(v) + " outside utility range");
    switch (family_) {
        case Family::LogShift: return std::exp(v) - b_;
        case Family::NegExp: return -std::log(-v) / alpha_;
        case Family::Linear: return (v + 1.0) / alpha_;
        case Family::Hara: break;
    }
    switch (hara_.kind) {
        case GammaKind::LogLimit: return (std::exp(v) - hara_.M) / hara_.alpha;
        case GammaKind::ExpLimit: return -std::log(-v) / hara_.alpha;
        case GammaKind::Finite: {
            const double g = hara_.gamma;
            const double z = std::pow(((1.0 - g) * v + 1.0) / g, 1.0 / (1.0 - g));
            return g * (z - hara_.M) / hara_.alpha;
        }
    }
    fail(Err::RangeViolation, "unreachable");
}

double UtilityDescriptor::prime_inverse(double v) const {
    if (!(v > 0.0) || !std::isfinite(v))
        fail(Err::RangeViolation, "marginal utility must be positive and finite");
    switch (family_) {
        case Family::LogShift: return 1.0 / v - b_;
        case Family::NegExp: return -std::log(v / alpha_) / alpha_;
        case Family::Linear:
            fail(Err::DegenerateSlope, "linear utility has constant marginal utility");
        case Family::Hara: break;
    }
    switch (hara_.kind) {
        case GammaKind::LogLimit: return (hara_.alpha / v - hara_.M) / hara_.alpha;
        case GammaKind::ExpLimit: return -std::log(v / hara_.alpha) / hara_.alpha;
        case GammaKind::Finite: {
            const double g = hara_.gamma;
            const double z = std::pow(v / hara_.alpha, -1.0 / g);
            return g * (z - hara_.M) / hara_.alpha;
        }
    }
    fail(Err::RangeViolation, "unreachable");
}

double UtilityDescriptor::risk_tolerance(double m) const {
    if (!in_domain(m)) domain_err(m);
    switch (family_) {
        case Family::LogShift: return b_ + m;
        case Family::NegExp: return 1.0 / alpha_;
        case Family::Linear: return kInf;
        case Family::Hara: break;
    }
    switch (hara_.kind) {
        case GammaKind::LogLimit: return hara_.M / hara_.alpha + m;
        case GammaKind::ExpLimit: return 1.0 / hara_.alpha;
        case GammaKind::Finite: return hara_.M / hara_.alpha + m / hara_.gamma;
    }
    domain_err(m);
}

std::string UtilityDescriptor::describe() const {
    std::ostringstream os;
    switch (family_) {
        case Family::LogShift: os << "log_shift(b=" << b_ << ")"; break;
        case Family::NegExp: os << "neg_exp(alpha=" << alpha_ << ")"; break;
        case Family::Linear: os << "linear(alpha=" << alpha_ << ")"; break;
        case Family::Hara:
            switch (hara_.kind) {
                case GammaKind::LogLimit:
                    os << "hara(gamma=1, alpha=" << hara_.alpha << ", M=" << hara_.M << ")";
                    break;
                case GammaKind::ExpLimit:
                    os << "hara(gamma=inf, alpha=" << hara_.alpha << ")";
                    break;
                case GammaKind::Finite:
                    os << "hara(gamma=" << hara_.gamma << ", alpha=" << hara_.alpha
                       << ", M=" << hara_.M << ")";
                    break;
            }
            break;
    }
    return os.str();
}

BoundednessVerdict classify_bounded_loss(const UtilityDescriptor& d) {
    if (d.family() == UtilityDescriptor::Family::Linear) return {false, BoundCondition::None};
    if (std::isfinite(d.domain_lower()))
        return {true, BoundCondition::DomainBoundedBelow};
    if (std::isfinite(d.range_upper()) && std::isinf(d.range_lower()))
        return {true, BoundCondition::RangeBoundedAboveNotBelow};
    return {false, BoundCondition::None};
}

ProbVector risk_neutral_prices(const UtilityDescriptor& d, const ProbVector& pi,
                               const WealthVector& m) {
    if (pi.size() != m.size()) fail(Err::MismatchedOutcomes, "pi and wealth size mismatch");
    if (!pi.strictly_positive())
        fail(Err::ZeroEntryInStrictMode, "subjective estimate must be strictly positive");
    std::vector<double> w(m.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        w[i] = pi[i] * d.prime(m[i]);
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return ProbVector::validate(w);
}

}  // namespace mm
