// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "mm/analysis.hpp"
#include "mm/equivalence.hpp"
#include "mm/sim.hpp"

using namespace mm;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
    std::printf("criterion %d: %s — %s%s%s\n", idx, ok ? "PASS" : "FAIL", what,
                detail.empty() ? "" : " | ", detail.c_str());
    if (!ok) ++g_failures;
}

QuantityVector random_q(std::mt19937_64& rng, std::size_t n, double span) {
    std::uniform_real_distribution<double> d(-span, span);
    QuantityVector q = QuantityVector::zeros(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = d(rng);
    return q;
}

// 1. worst_case_loss(lmsr(b, N)) = b log N within 1e-6 relative, each under 1 s
void criterion1() {
    bool ok = true;
    std::string detail;
    for (double b : {1.0, 72.1348, 100.0}) {
        for (std::size_t n : {2u, 3u, 5u}) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto est = worst_case_loss(CostFunction::lmsr(b, n));
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const double want = b * std::log(static_cast<double>(n));
            const double rel = std::fabs(est.value - want) / want;
            if (rel > 1e-6 || secs > 1.0) {
                ok = false;
                detail = "b=" + std::to_string(b) + " N=" + std::to_string(n) +
                         " rel=" + std::to_string(rel) + " t=" + std::to_string(secs);
            }
        }
    }
    report(1, "lmsr worst-case loss equals b log N (1e-6 rel, <1s each)", ok, detail);
}

// 2. msr_worst_case_loss(quadratic rule, uniform) = (N-1) b / N within 1e-9
void criterion2() {
    bool ok = true;
    std::string detail;
    for (double b : {1.0, 10.0}) {
        for (std::size_t n : {2u, 4u}) {
            const double got =
                msr_worst_case_loss(ScoringRuleSpec::quadratic(b, n), ProbVector::uniform(n));
            const double want = (static_cast<double>(n) - 1.0) * b / static_cast<double>(n);
            if (std::fabs(got - want) > 1e-9) {
                ok = false;
                detail = "b=" + std::to_string(b) + " N=" + std::to_string(n);
            }
        }
    }
    report(2, "quadratic-rule worst-case loss equals (N-1)b/N (1e-9)", ok, detail);
}

// 3. exp_utility(1/b, uniform) vs lmsr(b): identical prices (1e-12) and a
// constant raw-cost offset over 500 random q
void criterion3() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(101);
    for (std::size_t n : {2u, 3u}) {
        const double b = 72.1348;
        const auto e = CostFunction::exp_utility(1.0 / b, ProbVector::uniform(n));
        const auto l = CostFunction::lmsr(b, n);
        double offset = e.raw_cost(QuantityVector::zeros(n)) - l.raw_cost(QuantityVector::zeros(n));
        for (int i = 0; i < 500; ++i) {
            const auto q = random_q(rng, n, 50.0);
            const auto pe = e.prices(q);
            const auto pl = l.prices(q);
            for (std::size_t j = 0; j < n; ++j)
                if (std::fabs(pe[j] - pl[j]) > 1e-12) ok = false;
            const double d = e.raw_cost(q) - l.raw_cost(q);
            if (std::fabs(d - offset) > 1e-9) ok = false;
        }
        // the constant is the lmsr normalization b log N = (1/alpha) log N
        if (std::fabs(std::fabs(offset) - b * std::log(static_cast<double>(n))) > 1e-9) {
            ok = false;
            detail = "offset=" + std::to_string(offset);
        }
    }
    report(3, "corollary-4 anchor: exp-utility prices match lmsr, constant cost offset", ok,
           detail);
}

// 4. utility maker vs mapped scoring maker at 1e-8 over 100 sequences
void criterion4() {
    bool ok = true;
    std::string detail;
    struct Case {
        HaraParams h;
        const char* name;
    };
    const Case cases[] = {
        {HaraParams::finite(0.5, 1.0, 40.0), "gamma=0.5"},
        {HaraParams::finite(2.0, 1.0, 40.0), "gamma=2"},
        {HaraParams::finite(5.0, 1.0, 40.0), "gamma=5"},
        {HaraParams::log_limit(1.0, 40.0), "gamma=1 (log tag)"},
        {HaraParams::exp_limit(1.0 / 40.0), "gamma=inf (exp tag)"},
    };
    for (std::size_t n : {2u, 3u}) {
        const auto pi = ProbVector::uniform(n);
        for (const auto& c : cases) {
            const MarketMakerSpec a{UtilityMaker{UtilityDescriptor::hara(c.h), pi}};
            const MarketMakerSpec b{ScoringMaker{scoring_from_utility(c.h, pi)}};
            const auto rep = verify_behavioral_equivalence(a, b, 100, 1e-8, 1234);
            if (!rep.pass) {
                ok = false;
                detail = std::string(c.name) + " N=" + std::to_string(n) +
                         " dp=" + std::to_string(rep.max_profit_discrepancy);
            }
        }
    }
    report(4, "theorem-3 behavioral equivalence across gamma grid (1e-8, 100 sequences)", ok,
           detail);
}

// 5. implicit solver vs the two closed forms at 1e-9 over 500 states
void criterion5() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(202);
    const auto u_log = UtilityDescriptor::log_shift(50.0);
    const auto imp_log = CostFunction::implicit(u_log, ProbVector::uniform(2), std::log(50.0));
    const auto closed_log = CostFunction::log_utility_2(50.0);
    for (int i = 0; i < 500; ++i) {
        const auto q = random_q(rng, 2, 30.0);
        if (std::fabs(imp_log.cost(q) - closed_log.cost(q)) > 1e-9) {
            ok = false;
            detail = "log case";
        }
    }
    const double alpha = 0.04;
    const auto pi = ProbVector::validate(std::vector<double>{0.25, 0.45, 0.3});
    const auto imp_exp =
        CostFunction::implicit(UtilityDescriptor::neg_exp(alpha), pi, -1.0);
    const auto closed_exp = CostFunction::exp_utility(alpha, pi);
    for (int i = 0; i < 500; ++i) {
        const auto q = random_q(rng, 3, 30.0);
        if (std::fabs(imp_exp.cost(q) - closed_exp.cost(q)) > 1e-9) {
            ok = false;
            detail = "exp case";
        }
    }
    report(5, "implicit solver matches log and exponential closed forms (1e-9, 500 states)", ok,
           detail);
}

// 6. figure-2 reproduction: equal losses of 50, the stated rho values (0.5%),
// and a liquidity crossing inside (0.5, 0.9)
void criterion6() {
    const double b_lmsr = 50.0 / std::log(2.0);
    const auto lmsr = CostFunction::lmsr(b_lmsr, 2);
    const auto logu = CostFunction::log_utility_2(50.0);
    bool ok = true;
    std::string detail;

    const double la = worst_case_loss(lmsr).value;
    const double lb = worst_case_loss(logu).value;
    if (std::fabs(la - 50.0) > 1e-3 || std::fabs(lb - 50.0) > 1e-3) {
        ok = false;
        detail = "losses " + std::to_string(la) + "," + std::to_string(lb);
    }

    auto rho_at = [](const CostFunction& cf, double p) {
        return 1.0 / cf.axis_slope(axis_quantity_for_price(cf, p));
    };
    const struct {
        const CostFunction& cf;
        double p, want;
    } pts[] = {
        {lmsr, 0.5, 288.539},
        {logu, 0.5, 200.0},
        {lmsr, 0.9, 801.497},
        {logu, 0.9, 925.926},
    };
    for (const auto& pt : pts) {
        const double got = rho_at(pt.cf, pt.p);
        if (std::fabs(got - pt.want) / pt.want > 0.005) {
            ok = false;
            detail = "rho(" + std::to_string(pt.p) + ")=" + std::to_string(got);
        }
    }

    const auto intervals = liquidity_dominance_scan(lmsr, logu, 0.5, 0.9, 401);
    bool crossing = intervals.size() >= 2 && intervals.front().winner == 0 &&
                    intervals.back().winner == 1 && intervals.front().p_hi > 0.5 &&
                    intervals.front().p_hi < 0.9;
    if (!crossing) {
        ok = false;
        detail += " no crossing";
    }
    report(6, "figure-2: equal losses 50, rho values within 0.5%, crossing in (0.5,0.9)", ok,
           detail);
}

// 7. worst_case_loss >= (N-1)^2 rho_min / (2 N^2) - 1e-6 over a parameter grid
void criterion7() {
    bool ok = true;
    std::string detail;
    std::vector<CostFunction> grid;
    for (double b : {5.0, 20.0, 80.0}) {
        for (std::size_t n : {2u, 3u, 4u}) {
            grid.push_back(CostFunction::lmsr(b, n));
            grid.push_back(CostFunction::quadratic(b, n));
            grid.push_back(CostFunction::exp_utility(1.0 / b, ProbVector::uniform(n)));
        }
        grid.push_back(CostFunction::log_utility_2(b));
    }
    for (const auto& cf : grid) {
        const auto rep = theorem9_check(cf);
        if (!rep.bound_satisfied) {
            ok = false;
            detail = "kind=" + std::to_string(static_cast<int>(cf.kind())) +
                     " N=" + std::to_string(cf.outcomes());
        }
        if (cf.outcomes() == 2 &&
            std::fabs(rep.theorem9_bound - rep.min_liquidity / 8.0) > 1e-9 * rep.min_liquidity)
            ok = false;
    }
    report(7, "theorem-9 loss lower bound across the maker grid (N=2 bound is rho/8)", ok, detail);
}

// 8. boundedness classifier enumeration
void criterion8() {
    const auto c1 = classify_bounded_loss(UtilityDescriptor::log_shift(10.0));
    const auto c2 = classify_bounded_loss(UtilityDescriptor::neg_exp(0.1));
    const auto c3 = classify_bounded_loss(UtilityDescriptor::linear(1.0));
    const bool ok = c1.bounded && c1.satisfied_condition == BoundCondition::DomainBoundedBelow &&
                    c2.bounded && c2.satisfied_condition == BoundCondition::RangeBoundedAboveNotBelow &&
                    !c3.bounded && c3.satisfied_condition == BoundCondition::None;
    report(8, "theorem-2 classifier: log -> condition 1, neg-exp -> condition 2, linear -> unbounded",
           ok);
}

// 9. property suites: simplex/translation/path-independence/lemma-1 at 1e-9,
// gradient FD at 1e-5 rel, strict properness, and 10^3 seeded simulations
void criterion9() {
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(303);

    const auto u = UtilityDescriptor::log_shift(40.0);
    const CostFunction cfs[] = {
        CostFunction::lmsr(15.0, 3),
        CostFunction::quadratic(50.0, 3),
        CostFunction::exp_utility(0.03, ProbVector::uniform(3)),
        CostFunction::implicit(u, ProbVector::uniform(3), u.eval(0.0)),
    };
    for (const auto& cf : cfs) {
        for (int i = 0; i < 25; ++i) {
            const auto q = random_q(rng, 3, 6.0);
            const auto p = cf.prices(q);
            double s = 0.0;
            for (double x : p) s += x;
            if (std::fabs(s - 1.0) > 1e-9) { ok = false; detail = "simplex"; }

            QuantityVector qc = q;
            for (std::size_t j = 0; j < 3; ++j) qc[j] += 2.5;
            if (std::fabs(cf.cost(qc) - cf.cost(q) - 2.5) > 1e-9) { ok = false; detail = "translation"; }

            for (std::size_t j = 0; j < 3; ++j) {
                QuantityVector lo = q, hi = q;
                lo[j] -= 1e-5;
                hi[j] += 1e-5;
                const double fd = (cf.cost(hi) - cf.cost(lo)) / 2e-5;
                if (std::fabs(p[j] - fd) / std::max(1e-3, std::fabs(fd)) > 1e-5) {
                    ok = false;
                    detail = "gradient";
                }
            }
        }
        // path independence: total payment is order-free
        const auto d1 = random_q(rng, 3, 4.0);
        const auto d2 = random_q(rng, 3, 4.0);
        const double pay_a =
            (cf.cost(d1) - cf.cost(QuantityVector::zeros(3))) + (cf.cost(d1.plus(d2)) - cf.cost(d1));
        const double pay_b =
            (cf.cost(d2) - cf.cost(QuantityVector::zeros(3))) + (cf.cost(d2.plus(d1)) - cf.cost(d2));
        if (std::fabs(pay_a - pay_b) > 1e-9) { ok = false; detail = "path"; }
    }

    // lemma 1: constant expected utility for the implicit kind
    {
        const auto pi = ProbVector::uniform(3);
        const auto cf = CostFunction::implicit(u, pi, u.eval(0.0));
        for (int i = 0; i < 50; ++i) {
            const auto q = random_q(rng, 3, 8.0);
            const auto w = wealth_from(q, cf.cost(q));
            double eu = 0.0;
            for (std::size_t j = 0; j < 3; ++j) eu += pi[j] * u.eval(w[j]);
            if (std::fabs(eu - u.eval(0.0)) > 1e-9) { ok = false; detail = "lemma1"; }
        }
    }

    // strict properness, 200 pairs per rule
    {
        auto random_strict = [&](std::size_t n) {
            std::exponential_distribution<double> ex(1.0);
            std::vector<double> v(n);
            double s = 0.0;
            for (double& x : v) { x = ex(rng) + 0.05; s += x; }
            for (double& x : v) x /= s;
            return ProbVector::validate(v, true);
        };
        const ScoringRuleSpec rules[] = {
            ScoringRuleSpec::logarithmic(2.0, 3),
            ScoringRuleSpec::quadratic(2.0, 3),
            ScoringRuleSpec::weighted(BetaKind::Finite, 2.0, 2.0, random_strict(3)),
            ScoringRuleSpec::weighted(BetaKind::One, 1.0, 2.0, random_strict(3)),
            ScoringRuleSpec::weighted(BetaKind::Zero, 0.0, 2.0, random_strict(3)),
        };
        for (const auto& rule : rules) {
            for (int i = 0; i < 200; ++i) {
                const auto truth = random_strict(3);
                const auto rep = random_strict(3);
                double gap = 0.0;
                for (std::size_t j = 0; j < 3; ++j) gap += std::fabs(truth[j] - rep[j]);
                if (gap < 1e-6) continue;
                if (expected_score(rule, truth, truth) <= expected_score(rule, rep, truth)) {
                    ok = false;
                    detail = "properness";
                }
            }
        }
    }

    // 10^3 seeded simulations: loss-bound safety
    {
        const MarketMakerSpec makers[] = {
            MarketMakerSpec{CostMaker{CostFunction::lmsr(20.0, 2)}},
            MarketMakerSpec{CostMaker{CostFunction::quadratic(20.0, 2)}},
            MarketMakerSpec{CostMaker{CostFunction::log_utility_2(20.0)}},
            MarketMakerSpec{CostMaker{CostFunction::exp_utility(0.05, ProbVector::uniform(2))}},
        };
        for (const auto& m : makers) {
            for (std::uint64_t seed = 0; seed < 250; ++seed) {
                const SimConfig cfg{m, 6, BeliefModel{{0.7, 0.3}, 0.6}, seed, 1};
                const auto res = simulate(cfg);
                for (double l : res.realized_loss_per_outcome)
                    if (l > res.worst_case_bound + 1e-6) { ok = false; detail = "sim-bound"; }
            }
        }
    }
    report(9, "property suites: invariants, gradients, properness, 10^3 simulation runs", ok,
           detail);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/9 criteria passed in %.1f s\n", 9 - g_failures, secs);
    return g_failures == 0 ? 0 : 1;
}
