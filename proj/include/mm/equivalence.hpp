#pragma once

#include <cstdint>

#include "mm/spec.hpp"

namespace mm {

// Extended-real carriers for the beta <-> gamma bijection; tags map to tags
// (gamma = 1 <-> beta = 0, gamma = +-inf <-> beta = 1).
struct GammaValue {
    GammaKind kind = GammaKind::Finite;
    double value = 2.0;
};

struct BetaValue {
    BetaKind kind = BetaKind::Finite;
    double value = 0.5;
};

BetaValue gamma_to_beta(const GammaValue& g);  // beta = 1 - 1/gamma
GammaValue beta_to_gamma(const BetaValue& b);  // gamma = 1/(1-beta)

// Parameter maps between HARA utility makers and weighted pseudospherical
// scoring makers. The score scale is b = M/alpha, the maker's risk tolerance
// at zero wealth; this is the unique scale under which both makers, started
// at C(0)=0, are behaviorally identical (it reduces to b = 1/alpha at the
// negative-exponential anchor).
ScoringRuleSpec scoring_from_utility(const HaraParams& h, const ProbVector& pi);
std::pair<HaraParams, ProbVector> utility_from_scoring(const ScoringRuleSpec& s);

// logarithmic -> lmsr(b); quadratic -> quadratic(b, N); weighted
// pseudospherical -> exp_utility at beta = 1, else the implicit kind via
// utility_from_scoring.
CostFunction cost_from_scoring(const ScoringRuleSpec& s);

struct EquivalenceReport {
    double max_price_discrepancy = 0.0;
    double max_profit_discrepancy = 0.0;
    double cost_offset = 0.0;  // constant raw-cost difference, when defined
    bool cost_offset_defined = false;
    int samples = 0;
    double tol = 0.0;
    bool pass = false;

    std::string to_json(const std::string& pair_name) const;
};

// Runs matched random trade sequences against both makers and compares
// per-outcome trader profit vectors and instantaneous prices. Trade targets
// are interior simplex points with all entries >= 0.01.
EquivalenceReport verify_behavioral_equivalence(const MarketMakerSpec& a,
                                                const MarketMakerSpec& b, int samples,
                                                double tol, std::uint64_t seed = 20240901);

}  // namespace mm
