#pragma once

#include <string>
#include <variant>

#include "mm/market.hpp"
#include "mm/scoring.hpp"

namespace mm {

// One quoting/trading interface over the three formulations. A utility maker
// runs through the implicit cost function at k = u(0) (so C(0) = 0); a
// scoring maker is translated via cost_from_scoring.
struct UtilityMaker {
    UtilityDescriptor u;
    ProbVector pi;
};

struct ScoringMaker {
    ScoringRuleSpec rule;
};

struct CostMaker {
    CostFunction cf;
};

class MarketMakerSpec {
public:
    explicit MarketMakerSpec(UtilityMaker m) : v_(std::move(m)) {}
    explicit MarketMakerSpec(ScoringMaker m) : v_(std::move(m)) {}
    explicit MarketMakerSpec(CostMaker m) : v_(std::move(m)) {}

    bool is_utility() const { return std::holds_alternative<UtilityMaker>(v_); }
    bool is_scoring() const { return std::holds_alternative<ScoringMaker>(v_); }
    bool is_cost() const { return std::holds_alternative<CostMaker>(v_); }
    const UtilityMaker& utility() const { return std::get<UtilityMaker>(v_); }
    const ScoringMaker& scoring() const { return std::get<ScoringMaker>(v_); }
    const CostMaker& cost() const { return std::get<CostMaker>(v_); }

    std::size_t outcomes() const;
    CostFunction to_cost_function() const;  // runnable engine for any family

private:
    std::variant<UtilityMaker, ScoringMaker, CostMaker> v_;
};

// JSON (de)serialization. Reals are emitted as shortest round-tripping
// decimal strings, so save/load is lossless.
std::string spec_to_json(const MarketMakerSpec& spec);
MarketMakerSpec spec_from_json(const std::string& text);

std::string state_save(const MarketState& state, const MarketMakerSpec& spec);
std::pair<MarketState, MarketMakerSpec> state_load(const std::string& text);

}  // namespace mm
