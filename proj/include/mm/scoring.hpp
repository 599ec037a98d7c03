#pragma once

#include <vector>

#include "mm/types.hpp"

namespace mm {

// beta of the weighted pseudospherical family, with limit tags: One is the
// weighted logarithmic rule, Zero the atypical exp-of-weighted-log rule.
enum class BetaKind { Finite, One, Zero };

struct ScoringRuleSpec {
    enum class Kind { WeightedPseudospherical, Logarithmic, Quadratic };

    Kind kind = Kind::Logarithmic;
    double b = 1.0;
    std::size_t n = 2;  // Logarithmic / Quadratic outcome count
    // weighted pseudospherical parameters
    BetaKind beta_kind = BetaKind::Finite;
    double beta = 2.0;
    std::vector<double> weights;  // strict ProbVector entries
    std::vector<double> offsets;  // a_i, default all-zero

    static ScoringRuleSpec logarithmic(double b, std::size_t n);
    static ScoringRuleSpec quadratic(double b, std::size_t n);
    static ScoringRuleSpec weighted(BetaKind bk, double beta, double b, const ProbVector& pi,
                                    std::vector<double> offsets = {});

    std::size_t outcomes() const;
    ProbVector weight_vector() const;
};

// Score vector s_i(r): score paid if outcome i realizes. Entries may be
// -infinity (log-family rules at r_i = 0).
std::vector<double> score(const ScoringRuleSpec& s, const ProbVector& r);

double expected_score(const ScoringRuleSpec& s, const ProbVector& report,
                      const ProbVector& truth);

// s_i(r_new) - s_i(r_old); offsets cancel exactly.
std::vector<double> msr_payment(const ScoringRuleSpec& s, const ProbVector& r_old,
                                const ProbVector& r_new);

// s_j(e_j): vertex score for the true outcome, by closed form per branch.
// Finite for every weighted pseudospherical rule; for beta <= 0 the value is
// the directional limit r -> e_j along the simplex.
double vertex_score(const ScoringRuleSpec& s, std::size_t j);

// max_j s_j(e_j) - s_j(r0); +infinity when unbounded at a vertex.
double msr_worst_case_loss(const ScoringRuleSpec& s, const ProbVector& r0);

}  // namespace mm
