#include "mm/scoring.hpp"

#include <cmath>
#include <limits>

namespace mm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ScoringRuleSpec ScoringRuleSpec::logarithmic(double b, std::size_t n) {
    if (!(b > 0.0)) fail(Err::InvalidParameter, "scoring: b must be > 0");
    if (n < 2) fail(Err::InvalidParameter, "scoring: need at least 2 outcomes");
    ScoringRuleSpec s;
    s.kind = Kind::Logarithmic;
    s.b = b;
    s.n = n;
    return s;
}

ScoringRuleSpec ScoringRuleSpec::quadratic(double b, std::size_t n) {
    ScoringRuleSpec s = logarithmic(b, n);
    s.kind = Kind::Quadratic;
    return s;
}

ScoringRuleSpec ScoringRuleSpec::weighted(BetaKind bk, double beta, double b,
                                          const ProbVector& pi, std::vector<double> offsets) {
    if (!(b > 0.0)) fail(Err::InvalidParameter, "scoring: b must be > 0");
    if (!pi.strictly_positive())
        fail(Err::ZeroEntryInStrictMode, "scoring: weights must be strictly positive");
    if (bk == BetaKind::Finite) {
        if (!std::isfinite(beta)) fail(Err::InvalidParameter, "scoring: beta must be finite or a tag");
        if (beta == 1.0) fail(Err::InvalidParameter, "scoring: beta = 1 must use the One tag");
        if (beta == 0.0) fail(Err::InvalidParameter, "scoring: beta = 0 must use the Zero tag");
    }
    if (offsets.empty()) offsets.assign(pi.size(), 0.0);
    if (offsets.size() != pi.size()) fail(Err::MismatchedOutcomes, "scoring: offsets size mismatch");
    ScoringRuleSpec s;
    s.kind = Kind::WeightedPseudospherical;
    s.b = b;
    s.n = pi.size();
    s.beta_kind = bk;
    s.beta = bk == BetaKind::One ? 1.0 : (bk == BetaKind::Zero ? 0.0 : beta);
    s.weights = pi.entries();
    s.offsets = std::move(offsets);
    return s;
}

std::size_t ScoringRuleSpec::outcomes() const { return n; }

ProbVector ScoringRuleSpec::weight_vector() const {
    if (kind == Kind::WeightedPseudospherical) return ProbVector::validate(weights, true);
    return ProbVector::uniform(n);
}

namespace {

std::vector<double> score_impl(const ScoringRuleSpec& s, const ProbVector& r, bool with_offsets) {
    if (r.size() != s.outcomes()) fail(Err::MismatchedOutcomes, "score: outcome count mismatch");
    const std::size_t n = r.size();
    std::vector<double> out(n);

    switch (s.kind) {
        case ScoringRuleSpec::Kind::Logarithmic:
            for (std::size_t i = 0; i < n; ++i)
                out[i] = r[i] > 0.0 ? s.b * std::log(r[i]) : -kInf;
            return out;
        case ScoringRuleSpec::Kind::Quadratic: {
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) ss += r[i] * r[i];
            for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * s.b * r[i] - s.b * ss;
            return out;
        }
        case ScoringRuleSpec::Kind::WeightedPseudospherical:
            break;
    }

    const auto& pi = s.weights;
    switch (s.beta_kind) {
        case BetaKind::One:
            for (std::size_t i = 0; i < n; ++i)
                out[i] = r[i] > 0.0 ? s.b * std::log(r[i] / pi[i]) : -kInf;
            break;
        case BetaKind::Zero: {
            // g = exp(sum_j pi_j log(r_j/pi_j)); zero at any r_j = 0
            bool has_zero = false;
            double lg = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (r[i] > 0.0)
                    lg += pi[i] * std::log(r[i] / pi[i]);
                else
                    has_zero = true;
            }
            const double g = has_zero ? 0.0 : std::exp(lg);
            for (std::size_t i = 0; i < n; ++i)
                out[i] = r[i] > 0.0 ? -s.b * pi[i] / r[i] * g : -kInf;
            break;
        }
        case BetaKind::Finite: {
            const double beta = s.beta;
            if (beta < 0.0) {
                for (std::size_t i = 0; i < n; ++i)
                    if (r[i] == 0.0)
                        fail(Err::UndefinedScore,
                             "score undefined at a zero entry for beta < 0; vertex values via vertex_score");
            }
            double w = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (r[i] > 0.0) w += pi[i] * std::pow(r[i] / pi[i], beta);
            const double wpow = std::pow(w, (1.0 - beta) / beta);  // W^((1-beta)/beta)
            for (std::size_t i = 0; i < n; ++i) {
                if (r[i] == 0.0) {
                    // beta > 0 here; 0^(beta-1) is 0 for beta > 1, +inf for beta < 1
                    out[i] = beta > 1.0 ? -s.b / (beta - 1.0) : -kInf;
                } else {
                    const double t = std::pow(r[i] / pi[i], beta - 1.0) * wpow;
                    out[i] = s.b / (beta - 1.0) * (t - 1.0);
                }
            }
            break;
        }
    }
    if (with_offsets)
        for (std::size_t i = 0; i < n; ++i) out[i] += s.offsets[i];
    return out;
}

}  // namespace

std::vector<double> score(const ScoringRuleSpec& s, const ProbVector& r) {
    return score_impl(s, r, true);
}

double expected_score(const ScoringRuleSpec& s, const ProbVector& report,
                      const ProbVector& truth) {
    if (report.size() != truth.size()) fail(Err::MismatchedOutcomes, "expected_score size mismatch");
    const auto sc = score(s, report);
    double e = 0.0;
    for (std::size_t i = 0; i < sc.size(); ++i)
        if (truth[i] > 0.0) e += truth[i] * sc[i];
    return e;
}

std::vector<double> msr_payment(const ScoringRuleSpec& s, const ProbVector& r_old,
                                const ProbVector& r_new) {
    const auto a = score_impl(s, r_old, false);
    const auto b = score_impl(s, r_new, false);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[i] - a[i];
    return out;
}

double vertex_score(const ScoringRuleSpec& s, std::size_t j) {
    if (j >= s.outcomes()) fail(Err::InvalidParameter, "vertex_score: outcome index out of range");
    switch (s.kind) {
        case ScoringRuleSpec::Kind::Logarithmic: return 0.0;
        case ScoringRuleSpec::Kind::Quadratic: return s.b;
        case ScoringRuleSpec::Kind::WeightedPseudospherical: break;
    }
    const double aj = s.offsets[j];
    const double pj = s.weights[j];
    switch (s.beta_kind) {
        case BetaKind::One: return aj + s.b * std::log(1.0 / pj);
        case BetaKind::Zero: return aj;  // directional limit: the exp factor vanishes
        case BetaKind::Finite: {
            const double beta = s.beta;
            if (beta < 0.0) return aj + s.b / (1.0 - beta);  // directional limit
            return aj + s.b / (beta - 1.0) * (std::pow(pj, (1.0 - beta) / beta) - 1.0);
        }
    }
    fail(Err::InvalidParameter, "unreachable");
}

double msr_worst_case_loss(const ScoringRuleSpec& s, const ProbVector& r0) {
    const auto s0 = score_impl(s, r0, false);
    double worst = -kInf;
    for (std::size_t j = 0; j < s0.size(); ++j) {
        double v = vertex_score(s, j) - (s.kind == ScoringRuleSpec::Kind::WeightedPseudospherical
                                             ? s.offsets[j]
                                             : 0.0);
        if (std::isinf(s0[j])) return kInf;
        worst = std::max(worst, v - s0[j]);
    }
    return worst;
}

}  // namespace mm
