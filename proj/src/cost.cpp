#include "mm/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mm/kernels.hpp"

namespace mm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double initial_k(const UtilityDescriptor& u, const ProbVector& pi, const WealthVector& m0) {
    if (pi.size() != m0.size()) fail(Err::MismatchedOutcomes, "initial_k size mismatch");
    double k = 0.0;
    for (std::size_t j = 0; j < m0.size(); ++j) k += pi[j] * u.eval(m0[j]);
    return k;
}

double implicit_cost_solve(const UtilityDescriptor& u, const ProbVector& pi, double k,
                           const QuantityVector& q, const SolverConfig& cfg) {
    if (pi.size() != q.size()) fail(Err::MismatchedOutcomes, "implicit solve size mismatch");
    if (!(k > u.range_lower() && k < u.range_upper()))
        fail(Err::DomainViolation, "expected-utility level outside the utility range");

    double qmax = -kInf, qmin = kInf;
    for (std::size_t j = 0; j < q.size(); ++j) {
        qmax = std::max(qmax, q[j]);
        qmin = std::min(qmin, q[j]);
    }
    // valid C interval: all C - q_j interior to the utility domain
    const double c_min = u.domain_lower() + qmax;  // open
    const double c_max = u.domain_upper() + qmin;
    if (c_min >= c_max) fail(Err::DomainViolation, "no valid cost level for this quantity vector");

    auto g = [&](double c) {
        double s = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) s += pi[j] * u.eval(c - q[j]);
        return s - k;
    };
    auto gprime = [&](double c) {
        double s = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) s += pi[j] * u.prime(c - q[j]);
        return s;
    };

    // lower bracket
    double lo;
    if (std::isfinite(c_min)) {
        // the root can sit arbitrarily close to the domain edge when the
        // quantity spread is large; shrink the edge offset until bracketed
        double eps = std::max(cfg.abs_tol, 1e-12 * (1.0 + std::fabs(c_min)));
        lo = c_min + eps;
        int it = 0;
        while (g(lo) > 0.0) {
            eps *= 1.0 / 16.0;
            lo = c_min + eps;
            if (lo <= c_min || ++it > cfg.max_iter)
                fail(Err::DomainViolation, "k below the attainable expected utility");
        }
    } else {
        lo = qmax;
        double step = std::max(1.0, std::fabs(lo));
        int it = 0;
        while (g(lo) > 0.0) {
            lo -= step;
            step *= cfg.bracket_growth;
            if (++it > cfg.max_iter) fail(Err::SolverFailure, "lower bracket search exhausted");
        }
    }
    // upper bracket by geometric growth (halved toward a finite domain edge)
    double hi = lo;
    if (g(hi) < 0.0) {
        double step = std::max(1.0, std::fabs(lo));
        int it = 0;
        for (;;) {
            double cand = hi + step;
            if (std::isfinite(c_max) && cand >= c_max) cand = 0.5 * (hi + c_max);
            hi = cand;
            if (g(hi) >= 0.0) break;
            step *= cfg.bracket_growth;
            if (++it > cfg.max_iter)
                fail(Err::DomainViolation, "k above the attainable expected utility");
        }
    }

    // safeguarded Newton: step stays inside [lo, hi], bisection fallback
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double f = g(x);
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double fp = gprime(x);
        double xn = fp > 0.0 ? x - f / fp : x;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        const double dx = std::fabs(xn - x);
        x = xn;
        if (dx <= cfg.rel_tol * std::max(1.0, std::fabs(x)) + cfg.abs_tol) return x;
    }
    fail(Err::SolverFailure, "implicit cost solve did not converge");
}

const UtilityDescriptor& CostFunction::utility() const {
    if (!u_) fail(Err::InvalidParameter, "cost function has no utility descriptor");
    return *u_;
}

bool CostFunction::symmetric() const {
    switch (kind_) {
        case Kind::Lmsr:
        case Kind::Quadratic:
        case Kind::LogUtility2:
            return true;
        case Kind::ExpUtility:
        case Kind::Implicit: {
            const double u0 = weights_[0];
            for (std::size_t i = 1; i < weights_.size(); ++i)
                if (std::fabs(weights_[i] - u0) > 1e-15) return false;
            return true;
        }
    }
    return false;
}

CostFunction CostFunction::lmsr(double b, std::size_t n) {
    if (!(b > 0.0)) fail(Err::InvalidParameter, "lmsr: b must be > 0");
    if (n < 2) fail(Err::InvalidParameter, "lmsr: need at least 2 outcomes");
    CostFunction c;
    c.kind_ = Kind::Lmsr;
    c.b_ = b;
    c.n_ = n;
    c.weights_ = ProbVector::uniform(n);
    c.offset_ = c.raw_cost(QuantityVector::zeros(n));
    return c;
}

CostFunction CostFunction::quadratic(double b, std::size_t n) {
    if (!(b > 0.0)) fail(Err::InvalidParameter, "quadratic: b must be > 0");
    if (n < 2) fail(Err::InvalidParameter, "quadratic: need at least 2 outcomes");
    CostFunction c;
    c.kind_ = Kind::Quadratic;
    c.b_ = b;
    c.n_ = n;
    c.weights_ = ProbVector::uniform(n);
    c.offset_ = -b / static_cast<double>(n);
    return c;
}

CostFunction CostFunction::log_utility_2(double b) {
    if (!(b > 0.0)) fail(Err::InvalidParameter, "log_utility_2: b must be > 0");
    CostFunction c;
    c.kind_ = Kind::LogUtility2;
    c.b_ = b;
    c.n_ = 2;
    c.weights_ = ProbVector::uniform(2);
    c.u_ = UtilityDescriptor::log_shift(b);
    c.k_ = std::log(b);
    c.offset_ = 0.0;  // the closed form already has C(0) = 0
    return c;
}

CostFunction CostFunction::exp_utility(double alpha, const ProbVector& weights) {
    if (!(alpha > 0.0)) fail(Err::InvalidParameter, "exp_utility: alpha must be > 0");
    if (!weights.strictly_positive())
        fail(Err::ZeroEntryInStrictMode, "exp_utility: weights must be strictly positive");
    CostFunction c;
    c.kind_ = Kind::ExpUtility;
    c.alpha_ = alpha;
    c.n_ = weights.size();
    c.weights_ = weights;
    c.u_ = UtilityDescriptor::neg_exp(alpha);
    c.k_ = -1.0;
    c.offset_ = c.raw_cost(QuantityVector::zeros(c.n_));
    return c;
}

CostFunction CostFunction::implicit(const UtilityDescriptor& u, const ProbVector& weights,
                                    double k, const SolverConfig& cfg) {
    if (!weights.strictly_positive())
        fail(Err::ZeroEntryInStrictMode, "implicit: weights must be strictly positive");
    if (!u.market_safe())
        fail(Err::InvalidParameter,
             "implicit: gamma < 0 utilities (domain bounded above) are refused as market makers");
    if (!(k > u.range_lower() && k < u.range_upper()))
        fail(Err::DomainViolation, "implicit: k outside the utility range");
    CostFunction c;
    c.kind_ = Kind::Implicit;
    c.n_ = weights.size();
    c.weights_ = weights;
    c.u_ = u;
    c.k_ = k;
    c.cfg_ = cfg;
    c.offset_ = u.inverse(k);  // root of u(C) = k, i.e. raw cost at 0
    return c;
}

double CostFunction::raw_cost(const QuantityVector& q) const {
    if (q.size() != n_) fail(Err::MismatchedOutcomes, "cost: quantity size mismatch");
    switch (kind_) {
        case Kind::Lmsr:
            return b_ * kernels::logsumexp_scaled(q.q.data(), n_, 1.0 / b_);
        case Kind::Quadratic: {
            double s = 0.0, s2 = 0.0;
            for (double x : q.q) {
                s += x;
                s2 += x * x;
            }
            const double N = static_cast<double>(n_);
            return s / N + s2 / (4.0 * b_) - s * s / (4.0 * N * b_) - b_ / N;
        }
        case Kind::LogUtility2: {
            const double d = q[0] - q[1];
            return -b_ + 0.5 * (q[0] + q[1]) + 0.5 * std::sqrt(4.0 * b_ * b_ + d * d);
        }
        case Kind::ExpUtility: {
            std::vector<double> t(n_);
            for (std::size_t j = 0; j < n_; ++j) t[j] = q[j] + std::log(weights_[j]) / alpha_;
            return kernels::logsumexp_scaled(t.data(), n_, alpha_) / alpha_;
        }
        case Kind::Implicit:
            return implicit_cost_solve(*u_, weights_, k_, q, cfg_);
    }
    fail(Err::InvalidParameter, "unreachable");
}

ProbVector CostFunction::prices(const QuantityVector& q) const {
    if (q.size() != n_) fail(Err::MismatchedOutcomes, "prices: quantity size mismatch");
    std::vector<double> p(n_);
    switch (kind_) {
        case Kind::Lmsr:
            kernels::softmax_scaled(q.q.data(), n_, 1.0 / b_, p.data());
            break;
        case Kind::Quadratic: {
            double s = 0.0;
            for (double x : q.q) s += x;
            const double N = static_cast<double>(n_);
            for (std::size_t i = 0; i < n_; ++i) {
                p[i] = 1.0 / N + q[i] / (2.0 * b_) - s / (2.0 * N * b_);
                if (p[i] < -1e-12 || p[i] > 1.0 + 1e-12)
                    fail(Err::PriceOutOfRange, "quadratic price outside [0,1]");
                p[i] = std::clamp(p[i], 0.0, 1.0);
            }
            break;
        }
        case Kind::LogUtility2: {
            const double d = q[0] - q[1];
            const double root = std::sqrt(4.0 * b_ * b_ + d * d);
            p[0] = 0.5 + d / (2.0 * root);
            p[1] = 1.0 - p[0];
            break;
        }
        case Kind::ExpUtility: {
            std::vector<double> t(n_);
            for (std::size_t j = 0; j < n_; ++j) t[j] = q[j] + std::log(weights_[j]) / alpha_;
            kernels::softmax_scaled(t.data(), n_, alpha_, p.data());
            break;
        }
        case Kind::Implicit: {
            const double c = raw_cost(q);
            double sum = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                p[i] = weights_[i] * u_->prime(c - q[i]);
                sum += p[i];
            }
            for (double& x : p) x /= sum;
            break;
        }
    }
    return ProbVector::validate(p);
}

double CostFunction::axis_price(double qi) const {
    switch (kind_) {
        case Kind::Lmsr: {
            const double N = static_cast<double>(n_);
            return 1.0 / (1.0 + (N - 1.0) * std::exp(-qi / b_));
        }
        case Kind::Quadratic: {
            const double N = static_cast<double>(n_);
            const double p = 1.0 / N + qi * (N - 1.0) / (2.0 * N * b_);
            return std::clamp(p, 0.0, 1.0);
        }
        case Kind::LogUtility2: {
            const double root = std::sqrt(4.0 * b_ * b_ + qi * qi);
            return 0.5 + qi / (2.0 * root);
        }
        case Kind::ExpUtility: {
            if (!symmetric()) fail(Err::NonSymmetric, "axis price requires a symmetric maker");
            const double N = static_cast<double>(n_);
            return 1.0 / (1.0 + (N - 1.0) * std::exp(-alpha_ * qi));
        }
        case Kind::Implicit: {
            if (!symmetric()) fail(Err::NonSymmetric, "axis price requires a symmetric maker");
            QuantityVector q = QuantityVector::zeros(n_);
            q[0] = qi;
            return prices(q)[0];
        }
    }
    fail(Err::InvalidParameter, "unreachable");
}

double CostFunction::axis_slope(double qi) const {
    switch (kind_) {
        case Kind::Lmsr: {
            const double p = axis_price(qi);
            return p * (1.0 - p) / b_;
        }
        case Kind::Quadratic: {
            const double N = static_cast<double>(n_);
            const double p = 1.0 / N + qi * (N - 1.0) / (2.0 * N * b_);
            if (p <= 0.0 || p >= 1.0) return 0.0;  // clamped region
            return (N - 1.0) / (2.0 * N * b_);
        }
        case Kind::LogUtility2: {
            const double s = 4.0 * b_ * b_ + qi * qi;
            return 2.0 * b_ * b_ / (s * std::sqrt(s));
        }
        case Kind::ExpUtility: {
            const double p = axis_price(qi);
            return alpha_ * p * (1.0 - p);
        }
        case Kind::Implicit: {
            const double h = 1e-5 * std::max(1.0, std::fabs(qi));
            return (axis_price(qi + h) - axis_price(qi - h)) / (2.0 * h);
        }
    }
    fail(Err::InvalidParameter, "unreachable");
}

double CostFunction::liquidity(const QuantityVector& q, std::size_t i) const {
    if (i >= n_) fail(Err::InvalidParameter, "liquidity: outcome index out of range");
    double slope;
    switch (kind_) {
        case Kind::Lmsr: {
            const double p = prices(q)[i];
            slope = p * (1.0 - p) / b_;
            break;
        }
        case Kind::Quadratic: {
            const double N = static_cast<double>(n_);
            prices(q);  // validates the region
            slope = (N - 1.0) / (2.0 * N * b_);
            break;
        }
        case Kind::LogUtility2: {
            const double d = q[0] - q[1];
            const double s = 4.0 * b_ * b_ + d * d;
            slope = 2.0 * b_ * b_ / (s * std::sqrt(s));
            break;
        }
        case Kind::ExpUtility: {
            const double p = prices(q)[i];
            slope = alpha_ * p * (1.0 - p);
            break;
        }
        case Kind::Implicit: {
            const double h = 1e-5 * std::max(1.0, std::fabs(q[i]));
            QuantityVector up = q, dn = q;
            up[i] += h;
            dn[i] -= h;
            slope = (prices(up)[i] - prices(dn)[i]) / (2.0 * h);
            break;
        }
        default:
            fail(Err::InvalidParameter, "unreachable");
    }
    if (!(slope > 1e-300)) fail(Err::DegenerateSlope, "own-price slope is not positive");
    return 1.0 / slope;
}

}  // namespace mm
