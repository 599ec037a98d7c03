#include "mm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mm/kernels.hpp"

namespace mm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntegrandCut = 1e-10;

double characteristic_scale(const CostFunction& cf) {
    switch (cf.kind()) {
        case CostFunction::Kind::Lmsr:
        case CostFunction::Kind::Quadratic:
        case CostFunction::Kind::LogUtility2:
            return cf.b();
        case CostFunction::Kind::ExpUtility:
            return 1.0 / cf.alpha();
        case CostFunction::Kind::Implicit:
            return std::max(1.0, cf.utility().risk_tolerance(0.0));
    }
    return 1.0;
}

template <typename F>
double simpson(F&& f, double a, double fa, double b, double fb, double fm, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson(f, a, fa, m, fm, flm, 0.5 * tol, depth - 1) +
           simpson(f, m, fm, b, fb, frm, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(F&& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson(f, a, fa, b, fb, fm, tol, 40);
}

void require_symmetric(const CostFunction& cf) {
    if (!cf.symmetric())
        fail(Err::NonSymmetric, "analysis requires a symmetric (uniform-weight) maker");
    // numeric cross-check for kinds whose symmetry is not structural: the
    // choice of axis index must not matter
    if (cf.kind() == CostFunction::Kind::Implicit && cf.outcomes() > 1) {
        const std::size_t n = cf.outcomes();
        const double scale = characteristic_scale(cf);
        for (double q1 : {0.3 * scale, 1.7 * scale}) {
            QuantityVector first = QuantityVector::zeros(n);
            QuantityVector last = QuantityVector::zeros(n);
            first[0] = q1;
            last[n - 1] = q1;
            const double pa = cf.prices(first)[0];
            const double pb = cf.prices(last)[n - 1];
            if (std::fabs(pa - pb) > 1e-8)
                fail(Err::NonSymmetric, "axis price depends on the outcome index");
        }
    }
}

}  // namespace

double instantaneous_liquidity(const CostFunction& cf, const QuantityVector& q, std::size_t i) {
    return cf.liquidity(q, i);
}

LossEstimate worst_case_loss(const CostFunction& cf, const SolverConfig& cfg) {
    require_symmetric(cf);
    auto integrand = [&](double q) { return std::max(0.0, 1.0 - cf.axis_price(q)); };

    const double scale = characteristic_scale(cf);
    const double growth_budget = 1e9 * std::max(1.0, scale);
    // integrate until the integrand is negligible; the (1 - p(Q)) * Q tail
    // correction is exact for 1/q^2 tails and negligible for faster decay
    double total = 0.0;
    double a = 0.0;
    double seg = std::max(1.0, scale);
    int guard = 0;
    while (integrand(a) >= kIntegrandCut) {
        const double b = a + seg;
        total += integrate(integrand, a, b, 1e-12 * std::max(1.0, seg));
        a = b;
        seg *= cfg.bracket_growth;
        if (a > growth_budget || ++guard > 200)
            return {kInf, kInf, a};  // unbounded within the growth budget
    }
    const double tail = (1.0 - cf.axis_price(a)) * a;
    LossEstimate est;
    est.value = total + tail;
    est.error_estimate = std::max(tail, 1e-10 * std::max(1.0, total));
    est.truncation_point = a;
    return est;
}

double axis_quantity_for_price(const CostFunction& cf, double target) {
    if (!(target > 0.0 && target < 1.0))
        fail(Err::InvalidParameter, "axis price target must be in (0,1)");
    // p(q) is nondecreasing; bracket by geometric growth in both directions
    double lo = 0.0, hi = 0.0;
    const double scale = characteristic_scale(cf);
    double step = std::max(1.0, scale);
    int it = 0;
    while (cf.axis_price(hi) < target) {
        lo = hi;
        hi += step;
        step *= 2.0;
        if (++it > 400) fail(Err::Unattainable, "axis price never reaches the target");
    }
    step = std::max(1.0, scale);
    it = 0;
    while (cf.axis_price(lo) > target) {
        hi = lo;
        lo -= step;
        step *= 2.0;
        if (++it > 400) fail(Err::Unattainable, "axis price never reaches the target");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + std::fabs(lo)); ++i) {
        const double m = 0.5 * (lo + hi);
        if (cf.axis_price(m) < target)
            lo = m;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

LossLiquidityReport theorem9_check(const CostFunction& cf) {
    require_symmetric(cf);
    const LossEstimate loss = worst_case_loss(cf);

    // minimize rho = maximize the axis slope; dense scan brackets the
    // maximum, golden-section refines it (all implemented symmetric makers
    // have unimodal slope along the axis)
    const double q_lo = axis_quantity_for_price(cf, 0.001);
    const double q_hi = axis_quantity_for_price(cf, 0.999);
    const int kScan = 201;
    double best_q = q_lo, best_slope = -kInf;
    int best_idx = 0;
    for (int i = 0; i < kScan; ++i) {
        const double q = q_lo + (q_hi - q_lo) * i / (kScan - 1);
        const double s = cf.axis_slope(q);
        if (s > best_slope) {
            best_slope = s;
            best_q = q;
            best_idx = i;
        }
    }
    double a = q_lo + (q_hi - q_lo) * std::max(0, best_idx - 1) / (kScan - 1);
    double b = q_lo + (q_hi - q_lo) * std::min(kScan - 1, best_idx + 1) / (kScan - 1);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = cf.axis_slope(x1), f2 = cf.axis_slope(x2);
    for (int i = 0; i < 120 && b - a > 1e-11 * (1.0 + std::fabs(a)); ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = cf.axis_slope(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = cf.axis_slope(x1);
        }
    }
    best_slope = std::max(best_slope, std::max(f1, f2));
    (void)best_q;
    if (!(best_slope > 0.0)) fail(Err::DegenerateSlope, "axis slope is not positive");

    LossLiquidityReport rep;
    rep.worst_case_loss = loss.value;
    rep.loss_error_estimate = loss.error_estimate;
    rep.min_liquidity = 1.0 / best_slope;
    const double N = static_cast<double>(cf.outcomes());
    rep.theorem9_bound = (N - 1.0) * (N - 1.0) * rep.min_liquidity / (2.0 * N * N);
    rep.bound_satisfied = rep.worst_case_loss >= rep.theorem9_bound - 1e-6;
    return rep;
}

std::vector<DominanceInterval> liquidity_dominance_scan(const CostFunction& a,
                                                        const CostFunction& b, double p_lo,
                                                        double p_hi, int samples) {
    require_symmetric(a);
    require_symmetric(b);
    if (a.outcomes() != b.outcomes())
        fail(Err::MismatchedOutcomes, "dominance scan: outcome count mismatch");
    if (!(p_lo > 0.0 && p_hi < 1.0 && p_lo < p_hi) || samples < 2)
        fail(Err::InvalidParameter, "dominance scan: bad price range or sample count");

    const double la = worst_case_loss(a).value;
    const double lb = worst_case_loss(b).value;
    if (!(std::fabs(la - lb) <= 1e-3))
        fail(Err::LossMismatch, "dominance scan requires equal worst-case loss (theorem hypothesis)");

    std::vector<DominanceInterval> out;
    int cur = 2;  // sentinel
    double start = p_lo;
    double prev_p = p_lo;
    for (int i = 0; i < samples; ++i) {
        const double p = p_lo + (p_hi - p_lo) * i / (samples - 1);
        const double ra = 1.0 / a.axis_slope(axis_quantity_for_price(a, p));
        const double rb = 1.0 / b.axis_slope(axis_quantity_for_price(b, p));
        int w;
        if (std::fabs(ra - rb) <= 1e-9 * std::max(ra, rb))
            w = -1;
        else
            w = ra > rb ? 0 : 1;
        if (w != cur) {
            if (cur != 2) out.push_back({start, prev_p, cur});
            cur = w;
            start = p;
        }
        prev_p = p;
    }
    out.push_back({start, prev_p, cur});
    return out;
}

LiquidityCurve figure2_curve(const CostFunction& cf, double q_max, int samples) {
    require_symmetric(cf);
    if (cf.outcomes() != 2) fail(Err::InvalidParameter, "figure2_curve: two-outcome makers only");
    if (samples < 2 || !(q_max > 0.0)) fail(Err::InvalidParameter, "figure2_curve: bad grid");

    LiquidityCurve curve;
    curve.samples.reserve(samples);
    std::vector<double> grid(samples);
    for (int i = 0; i < samples; ++i)
        grid[i] = q_max * static_cast<double>(i) / (samples - 1);

    if (cf.kind() == CostFunction::Kind::Lmsr || cf.kind() == CostFunction::Kind::ExpUtility) {
        // batch path: p(q) = 1/(1 + (N-1) e^{-q/s}) over the whole grid
        const double s = characteristic_scale(cf);
        std::vector<double> e(samples);
        kernels::active().exp_scaled(grid.data(), grid.size(), -1.0 / s, 0.0, e.data());
        for (int i = 0; i < samples; ++i) {
            const double p = 1.0 / (1.0 + e[i]);
            curve.samples.push_back({grid[i], p, s / (p * (1.0 - p))});
        }
        return curve;
    }
    for (int i = 0; i < samples; ++i) {
        const double p = cf.axis_price(grid[i]);
        const double slope = cf.axis_slope(grid[i]);
        if (!(slope > 0.0)) fail(Err::DegenerateSlope, "axis slope vanished inside the grid");
        curve.samples.push_back({grid[i], p, 1.0 / slope});
    }
    return curve;
}

std::string LossLiquidityReport::to_json() const {
    nlohmann::json j;
    j["worst_case_loss"] = std::isinf(worst_case_loss) ? nlohmann::json("inf")
                                                       : nlohmann::json(worst_case_loss);
    j["loss_error_estimate"] = loss_error_estimate;
    j["min_liquidity"] = min_liquidity;
    j["theorem9_bound"] = theorem9_bound;
    j["bound_satisfied"] = bound_satisfied;
    return j.dump();
}

std::string LiquidityCurve::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "q1,price,liquidity\n";
    for (const auto& s : samples) os << s.q1 << "," << s.price << "," << s.liquidity << "\n";
    return os.str();
}

}  // namespace mm
