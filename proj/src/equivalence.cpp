#include "mm/equivalence.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

namespace mm {

BetaValue gamma_to_beta(const GammaValue& g) {
    switch (g.kind) {
        case GammaKind::LogLimit: return {BetaKind::Zero, 0.0};
        case GammaKind::ExpLimit: return {BetaKind::One, 1.0};
        case GammaKind::Finite: break;
    }
    if (g.value == 0.0)
        fail(Err::NoCorrespondence, "linear utility (gamma = 0) has no corresponding scoring rule");
    const double beta = 1.0 - 1.0 / g.value;
    if (beta == 1.0) return {BetaKind::One, 1.0};
    if (beta == 0.0) return {BetaKind::Zero, 0.0};
    return {BetaKind::Finite, beta};
}

GammaValue beta_to_gamma(const BetaValue& b) {
    switch (b.kind) {
        case BetaKind::Zero: return {GammaKind::LogLimit, 1.0};
        case BetaKind::One: return {GammaKind::ExpLimit, 0.0};
        case BetaKind::Finite: break;
    }
    if (b.value == 1.0) return {GammaKind::ExpLimit, 0.0};
    if (b.value == 0.0) return {GammaKind::LogLimit, 1.0};
    return {GammaKind::Finite, 1.0 / (1.0 - b.value)};
}

ScoringRuleSpec scoring_from_utility(const HaraParams& h, const ProbVector& pi) {
    if (!pi.strictly_positive())
        fail(Err::ZeroEntryInStrictMode, "subjective estimate must be strictly positive");
    switch (h.kind) {
        case GammaKind::ExpLimit:
            return ScoringRuleSpec::weighted(BetaKind::One, 1.0, 1.0 / h.alpha, pi);
        case GammaKind::LogLimit:
            return ScoringRuleSpec::weighted(BetaKind::Zero, 0.0, h.M / h.alpha, pi);
        case GammaKind::Finite: break;
    }
    if (!(h.M > 0.0))
        fail(Err::NoCorrespondence,
             "finite-gamma map needs M > 0 (zero wealth must be interior to the domain)");
    const BetaValue beta = gamma_to_beta({GammaKind::Finite, h.gamma});
    return ScoringRuleSpec::weighted(beta.kind, beta.value, h.M / h.alpha, pi);
}

std::pair<HaraParams, ProbVector> utility_from_scoring(const ScoringRuleSpec& s) {
    if (s.kind != ScoringRuleSpec::Kind::WeightedPseudospherical)
        fail(Err::NoCorrespondence, "only weighted pseudospherical rules map to HARA utilities");
    const ProbVector pi = s.weight_vector();
    const GammaValue g = beta_to_gamma({s.beta_kind, s.beta});
    // canonical affine representative: M = 1, alpha = 1/b (so M/alpha = b)
    switch (g.kind) {
        case GammaKind::ExpLimit: return {HaraParams::exp_limit(1.0 / s.b), pi};
        case GammaKind::LogLimit: return {HaraParams::log_limit(1.0 / s.b, 1.0), pi};
        case GammaKind::Finite:
            return {HaraParams::finite(g.value, 1.0 / s.b, 1.0), pi};
    }
    fail(Err::NoCorrespondence, "unreachable");
}

CostFunction cost_from_scoring(const ScoringRuleSpec& s) {
    switch (s.kind) {
        case ScoringRuleSpec::Kind::Logarithmic: return CostFunction::lmsr(s.b, s.n);
        case ScoringRuleSpec::Kind::Quadratic: return CostFunction::quadratic(s.b, s.n);
        case ScoringRuleSpec::Kind::WeightedPseudospherical: break;
    }
    if (s.beta_kind == BetaKind::One)
        return CostFunction::exp_utility(1.0 / s.b, s.weight_vector());
    auto [h, pi] = utility_from_scoring(s);
    const UtilityDescriptor u = UtilityDescriptor::hara(h);
    return CostFunction::implicit(u, pi, u.eval(0.0));
}

namespace {

// Behavioral adapter: either the cost engine or direct MSR payments.
struct Runner {
    bool is_msr = false;
    // cost side
    CostFunction cf = CostFunction::lmsr(1.0, 2);
    MarketState state;
    // msr side
    ScoringRuleSpec rule = ScoringRuleSpec::logarithmic(1.0, 2);
    std::vector<double> estimate;

    static Runner make(const MarketMakerSpec& spec) {
        Runner r;
        if (spec.is_scoring()) {
            r.is_msr = true;
            r.rule = spec.scoring().rule;
        } else {
            r.cf = spec.to_cost_function();
        }
        r.reset();
        return r;
    }

    void reset() {
        if (is_msr) {
            estimate = rule.weight_vector().entries();
        } else {
            state = MarketState::fresh(cf);
        }
    }

    std::vector<double> prices() const {
        if (is_msr) return estimate;
        return cf.prices(state.quantities).entries();
    }

    // per-outcome trader profit for moving the market to belief r
    std::vector<double> trade_to(const ProbVector& r) {
        if (is_msr) {
            auto pay = msr_payment(rule, ProbVector::validate(estimate), r);
            estimate = r.entries();
            return pay;
        }
        auto [next, rec] = move_to_belief(cf, state, r);
        state = std::move(next);
        std::vector<double> profit(rec.delta.size());
        for (std::size_t i = 0; i < profit.size(); ++i) profit[i] = rec.delta[i] - rec.payment;
        return profit;
    }
};

ProbVector random_interior(std::mt19937_64& rng, std::size_t n) {
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> d(n);
    double s = 0.0;
    for (double& x : d) {
        x = ex(rng);
        s += x;
    }
    const double floor = 0.01;
    const double rest = 1.0 - floor * static_cast<double>(n);
    for (double& x : d) x = floor + rest * (x / s);
    return ProbVector::validate(d, true);
}

}  // namespace

EquivalenceReport verify_behavioral_equivalence(const MarketMakerSpec& a,
                                                const MarketMakerSpec& b, int samples,
                                                double tol, std::uint64_t seed) {
    if (a.outcomes() != b.outcomes())
        fail(Err::MismatchedOutcomes, "equivalence: outcome count mismatch");
    const std::size_t n = a.outcomes();

    Runner ra = Runner::make(a);
    Runner rb = Runner::make(b);

    EquivalenceReport rep;
    rep.samples = samples;
    rep.tol = tol;

    std::mt19937_64 rng(seed);
    constexpr int kTradesPerSequence = 3;
    bool offset_ok = !ra.is_msr && !rb.is_msr;
    double offset = 0.0;
    bool offset_init = false;

    for (int s = 0; s < samples; ++s) {
        ra.reset();
        rb.reset();
        for (int t = 0; t < kTradesPerSequence; ++t) {
            const ProbVector r = random_interior(rng, n);
            const auto pa = ra.trade_to(r);
            const auto pb = rb.trade_to(r);
            for (std::size_t i = 0; i < n; ++i)
                rep.max_profit_discrepancy =
                    std::max(rep.max_profit_discrepancy, std::fabs(pa[i] - pb[i]));
            const auto qa = ra.prices();
            const auto qb = rb.prices();
            for (std::size_t i = 0; i < n; ++i)
                rep.max_price_discrepancy =
                    std::max(rep.max_price_discrepancy, std::fabs(qa[i] - qb[i]));
            if (offset_ok) {
                // raw-cost difference is a meaningful constant only when the
                // two engines walked the same quantity path
                bool same_q = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (std::fabs(ra.state.quantities[i] - rb.state.quantities[i]) > 1e-9)
                        same_q = false;
                if (same_q) {
                    const double d =
                        ra.cf.raw_cost(ra.state.quantities) - rb.cf.raw_cost(rb.state.quantities);
                    if (!offset_init) {
                        offset = d;
                        offset_init = true;
                    } else if (std::fabs(d - offset) > 1e-6) {
                        offset_ok = false;
                    }
                } else {
                    offset_ok = false;
                }
            }
        }
    }
    rep.cost_offset_defined = offset_ok && offset_init;
    rep.cost_offset = rep.cost_offset_defined ? offset : 0.0;
    rep.pass = rep.max_price_discrepancy <= tol && rep.max_profit_discrepancy <= tol;
    return rep;
}

std::string EquivalenceReport::to_json(const std::string& pair_name) const {
    nlohmann::json j;
    j["pair"] = pair_name;
    j["samples"] = samples;
    j["max_price_discrepancy"] = max_price_discrepancy;
    j["max_profit_discrepancy"] = max_profit_discrepancy;
    if (cost_offset_defined) j["cost_offset"] = cost_offset;
    j["verdict"] = pass ? "pass" : "fail";
    return j.dump();
}

}  // namespace mm
