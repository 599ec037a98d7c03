#include "mm/market.hpp"

#include <cmath>
#include <limits>

namespace mm {

MarketState MarketState::fresh(const CostFunction& cf) {
    MarketState s;
    s.quantities = QuantityVector::zeros(cf.outcomes());
    s.collected = cf.cost(s.quantities);  // zero up to rounding of the offset
    s.k = cf.has_utility() ? cf.level_k() : 0.0;
    return s;
}

WealthVector wealth_from_state(const MarketState& s) {
    return wealth_from(s.quantities, s.collected);
}

std::pair<MarketState, TradeRecord> trade(const CostFunction& cf, const MarketState& s,
                                          const QuantityVector& delta) {
    if (s.resolved()) fail(Err::MarketResolved, "market is resolved; trading is closed");
    if (delta.size() != cf.outcomes()) fail(Err::MismatchedOutcomes, "trade: delta size mismatch");

    const ProbVector before = cf.prices(s.quantities);
    const QuantityVector q_new = s.quantities.plus(delta);
    const double cost_new = cf.cost(q_new);   // throws before any mutation
    const ProbVector after = cf.prices(q_new);

    TradeRecord rec;
    rec.delta = delta;
    rec.payment = cost_new - s.collected;
    rec.prices_before = before.entries();
    rec.prices_after = after.entries();
    rec.seq = s.trade_log.empty() ? 1 : s.trade_log.back().seq + 1;

    MarketState out = s;
    out.quantities = q_new;
    out.collected = cost_new;
    out.trade_log.push_back(rec);
    return {std::move(out), std::move(rec)};
}

namespace {

// Utility route: target prices r determine the maker's wealth vector up to
// the level found from the constant-expected-utility constraint. Monotone
// 1-D root find over the price normalizer t: u'(m_i) = t r_i / pi_i.
QuantityVector utility_belief_delta(const CostFunction& cf, const QuantityVector& q,
                                    const ProbVector& r) {
    const UtilityDescriptor& u = cf.utility();
    const ProbVector& pi = cf.weights();
    const double k = cf.level_k();
    const std::size_t n = q.size();
    const SolverConfig& cfg = cf.solver_config();

    auto wealth_at = [&](double t, std::vector<double>& m) {
        for (std::size_t i = 0; i < n; ++i) m[i] = u.prime_inverse(t * r[i] / pi[i]);
    };
    std::vector<double> m(n);
    auto g = [&](double t) {  // strictly decreasing in t
        wealth_at(t, m);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += pi[i] * u.eval(m[i]);
        return s - k;
    };

    // start from the normalizer implied by the current state
    const double c_raw = cf.raw_cost(q);
    double t0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) t0 += pi[i] * u.prime(c_raw - q[i]);

    double lo = t0, hi = t0;
    int it = 0;
    while (g(lo) < 0.0) {  // need smaller t (larger wealth)
        lo /= cfg.bracket_growth;
        if (++it > cfg.max_iter) fail(Err::Unattainable, "belief outside the reachable price set");
    }
    it = 0;
    while (g(hi) > 0.0) {
        hi *= cfg.bracket_growth;
        if (++it > cfg.max_iter) fail(Err::Unattainable, "belief outside the reachable price set");
    }
    // bisection on log t
    double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < 200 && (lb - la) > 1e-15 * (1.0 + std::fabs(la)); ++i) {
        const double mid = 0.5 * (la + lb);
        if (g(std::exp(mid)) >= 0.0)
            la = mid;
        else
            lb = mid;
    }
    wealth_at(std::exp(0.5 * (la + lb)), m);

    // q'_i - q'_N = m_N - m_i; pin delta_N = 0
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (m[n - 1] - m[i]) - (q[i] - q[n - 1]);
    return QuantityVector(std::move(d));
}

}  // namespace

QuantityVector belief_delta(const CostFunction& cf, const QuantityVector& q, const ProbVector& r) {
    if (r.size() != cf.outcomes()) fail(Err::MismatchedOutcomes, "belief size mismatch");
    if (!r.strictly_positive())
        fail(Err::ZeroEntryInStrictMode, "target belief must be strictly positive");
    const std::size_t n = q.size();
    std::vector<double> d(n);
    switch (cf.kind()) {
        case CostFunction::Kind::Lmsr: {
            const ProbVector p = cf.prices(q);
            for (std::size_t i = 0; i < n; ++i) d[i] = cf.b() * std::log(r[i] / p[i]);
            return QuantityVector(std::move(d));
        }
        case CostFunction::Kind::ExpUtility: {
            const ProbVector p = cf.prices(q);
            for (std::size_t i = 0; i < n; ++i) d[i] = std::log(r[i] / p[i]) / cf.alpha();
            return QuantityVector(std::move(d));
        }
        case CostFunction::Kind::Quadratic: {
            const ProbVector p = cf.prices(q);
            for (std::size_t i = 0; i < n; ++i)
                d[i] = 2.0 * cf.b() * ((r[i] - p[i]) - (r[n - 1] - p[n - 1]));
            return QuantityVector(std::move(d));
        }
        case CostFunction::Kind::LogUtility2:
        case CostFunction::Kind::Implicit:
            return utility_belief_delta(cf, q, r);
    }
    fail(Err::InvalidParameter, "unreachable");
}

std::pair<MarketState, TradeRecord> move_to_belief(const CostFunction& cf, const MarketState& s,
                                                   const ProbVector& r) {
    const QuantityVector d = belief_delta(cf, s.quantities, r);
    auto [out, rec] = trade(cf, s, d);
    // sanity: prices landed on the belief
    for (std::size_t i = 0; i < r.size(); ++i)
        if (std::fabs(rec.prices_after[i] - r[i]) > 1e-6)
            fail(Err::SolverFailure, "move_to_belief did not reach the target prices");
    return {std::move(out), std::move(rec)};
}

MarketState replay(const CostFunction& cf, const std::vector<TradeRecord>& log) {
    MarketState s = MarketState::fresh(cf);
    for (const auto& rec : log) {
        auto [next, r] = trade(cf, s, rec.delta);
        s = std::move(next);
    }
    return s;
}

}  // namespace mm
