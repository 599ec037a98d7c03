#include "mm/spec.hpp"

#include <json.hpp>

#include "mm/equivalence.hpp"

namespace mm {

using nlohmann::json;

std::size_t MarketMakerSpec::outcomes() const {
    if (is_utility()) return utility().pi.size();
    if (is_scoring()) return scoring().rule.outcomes();
    return cost().cf.outcomes();
}

CostFunction MarketMakerSpec::to_cost_function() const {
    if (is_cost()) return cost().cf;
    if (is_scoring()) return cost_from_scoring(scoring().rule);
    const auto& um = utility();
    if (!um.u.market_safe())
        fail(Err::InvalidParameter, "utility maker with domain bounded above is refused");
    if (!um.u.in_domain(0.0))
        fail(Err::DomainViolation, "utility maker needs zero wealth in the domain to start at C(0)=0");
    // negative exponential has the closed form (weights fold into the cost)
    const auto fam = um.u.family();
    if (fam == UtilityDescriptor::Family::NegExp)
        return CostFunction::exp_utility(um.u.alpha(), um.pi);
    if (fam == UtilityDescriptor::Family::Hara && um.u.hara_params().kind == GammaKind::ExpLimit)
        return CostFunction::exp_utility(um.u.hara_params().alpha, um.pi);
    return CostFunction::implicit(um.u, um.pi, um.u.eval(0.0));
}

namespace {

json utility_to_json(const UtilityDescriptor& u) {
    json j;
    switch (u.family()) {
        case UtilityDescriptor::Family::LogShift:
            j["family"] = "log_shift";
            j["b"] = u.shift_b();
            break;
        case UtilityDescriptor::Family::NegExp:
            j["family"] = "neg_exp";
            j["alpha"] = u.alpha();
            break;
        case UtilityDescriptor::Family::Linear:
            j["family"] = "linear";
            j["alpha"] = u.alpha();
            break;
        case UtilityDescriptor::Family::Hara: {
            const auto& h = u.hara_params();
            j["family"] = "hara";
            j["alpha"] = h.alpha;
            j["M"] = h.M;
            switch (h.kind) {
                case GammaKind::Finite: j["gamma"] = h.gamma; break;
                case GammaKind::LogLimit: j["gamma"] = "log"; break;
                case GammaKind::ExpLimit: j["gamma"] = "exp"; break;
            }
            break;
        }
    }
    return j;
}

UtilityDescriptor utility_from_json(const json& j) {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "log_shift") return UtilityDescriptor::log_shift(j.at("b").get<double>());
    if (fam == "neg_exp") return UtilityDescriptor::neg_exp(j.at("alpha").get<double>());
    if (fam == "linear") return UtilityDescriptor::linear(j.at("alpha").get<double>());
    if (fam == "hara") {
        const double alpha = j.at("alpha").get<double>();
        const auto& g = j.at("gamma");
        if (g.is_string()) {
            const std::string tag = g.get<std::string>();
            if (tag == "log")
                return UtilityDescriptor::hara(HaraParams::log_limit(alpha, j.at("M").get<double>()));
            if (tag == "exp") return UtilityDescriptor::hara(HaraParams::exp_limit(alpha));
            fail(Err::MalformedDocument, "unknown gamma tag: " + tag);
        }
        return UtilityDescriptor::hara(
            HaraParams::finite(g.get<double>(), alpha, j.at("M").get<double>()));
    }
    fail(Err::MalformedDocument, "unknown utility family: " + fam);
}

json rule_to_json(const ScoringRuleSpec& s) {
    json j;
    j["b"] = s.b;
    switch (s.kind) {
        case ScoringRuleSpec::Kind::Logarithmic:
            j["kind"] = "logarithmic";
            j["n"] = s.n;
            break;
        case ScoringRuleSpec::Kind::Quadratic:
            j["kind"] = "quadratic";
            j["n"] = s.n;
            break;
        case ScoringRuleSpec::Kind::WeightedPseudospherical:
            j["kind"] = "weighted_pseudospherical";
            j["weights"] = s.weights;
            j["offsets"] = s.offsets;
            switch (s.beta_kind) {
                case BetaKind::Finite: j["beta"] = s.beta; break;
                case BetaKind::One: j["beta"] = "one"; break;
                case BetaKind::Zero: j["beta"] = "zero"; break;
            }
            break;
    }
    return j;
}

ScoringRuleSpec rule_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double b = j.at("b").get<double>();
    if (kind == "logarithmic")
        return ScoringRuleSpec::logarithmic(b, j.at("n").get<std::size_t>());
    if (kind == "quadratic") return ScoringRuleSpec::quadratic(b, j.at("n").get<std::size_t>());
    if (kind == "weighted_pseudospherical") {
        const auto pi = ProbVector::validate(j.at("weights").get<std::vector<double>>(), true);
        std::vector<double> offsets;
        if (j.contains("offsets")) offsets = j.at("offsets").get<std::vector<double>>();
        const auto& beta = j.at("beta");
        if (beta.is_string()) {
            const std::string tag = beta.get<std::string>();
            if (tag == "one") return ScoringRuleSpec::weighted(BetaKind::One, 1.0, b, pi, offsets);
            if (tag == "zero") return ScoringRuleSpec::weighted(BetaKind::Zero, 0.0, b, pi, offsets);
            fail(Err::MalformedDocument, "unknown beta tag: " + tag);
        }
        return ScoringRuleSpec::weighted(BetaKind::Finite, beta.get<double>(), b, pi, offsets);
    }
    fail(Err::MalformedDocument, "unknown scoring kind: " + kind);
}

json cost_to_json(const CostFunction& cf) {
    json j;
    switch (cf.kind()) {
        case CostFunction::Kind::Lmsr:
            j["kind"] = "lmsr";
            j["b"] = cf.b();
            j["n"] = cf.outcomes();
            break;
        case CostFunction::Kind::Quadratic:
            j["kind"] = "quadratic";
            j["b"] = cf.b();
            j["n"] = cf.outcomes();
            break;
        case CostFunction::Kind::LogUtility2:
            j["kind"] = "log_utility_2";
            j["b"] = cf.b();
            break;
        case CostFunction::Kind::ExpUtility:
            j["kind"] = "exp_utility";
            j["alpha"] = cf.alpha();
            j["weights"] = cf.weights().entries();
            break;
        case CostFunction::Kind::Implicit:
            j["kind"] = "implicit";
            j["utility"] = utility_to_json(cf.utility());
            j["weights"] = cf.weights().entries();
            j["k"] = cf.level_k();
            break;
    }
    return j;
}

CostFunction cost_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lmsr")
        return CostFunction::lmsr(j.at("b").get<double>(), j.at("n").get<std::size_t>());
    if (kind == "quadratic")
        return CostFunction::quadratic(j.at("b").get<double>(), j.at("n").get<std::size_t>());
    if (kind == "log_utility_2") return CostFunction::log_utility_2(j.at("b").get<double>());
    if (kind == "exp_utility")
        return CostFunction::exp_utility(
            j.at("alpha").get<double>(),
            ProbVector::validate(j.at("weights").get<std::vector<double>>(), true));
    if (kind == "implicit")
        return CostFunction::implicit(
            utility_from_json(j.at("utility")),
            ProbVector::validate(j.at("weights").get<std::vector<double>>(), true),
            j.at("k").get<double>());
    fail(Err::MalformedDocument, "unknown cost kind: " + kind);
}

json spec_to_json_obj(const MarketMakerSpec& spec) {
    json j;
    if (spec.is_utility()) {
        j["family"] = "utility";
        j["utility"] = utility_to_json(spec.utility().u);
        j["pi"] = spec.utility().pi.entries();
    } else if (spec.is_scoring()) {
        j["family"] = "scoring";
        j["rule"] = rule_to_json(spec.scoring().rule);
    } else {
        j["family"] = "cost";
        json c = cost_to_json(spec.cost().cf);
        for (auto& [key, val] : c.items()) j[key] = val;
    }
    return j;
}

MarketMakerSpec spec_from_json_obj(const json& j) {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "utility")
        return MarketMakerSpec(UtilityMaker{
            utility_from_json(j.at("utility")),
            ProbVector::validate(j.at("pi").get<std::vector<double>>(), true)});
    if (fam == "scoring") return MarketMakerSpec(ScoringMaker{rule_from_json(j.at("rule"))});
    if (fam == "cost") return MarketMakerSpec(CostMaker{cost_from_json(j)});
    fail(Err::MalformedDocument, "unknown maker family: " + fam);
}

json parse_or_fail(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(Err::MalformedDocument, "invalid JSON document");
    return j;
}

}  // namespace

std::string spec_to_json(const MarketMakerSpec& spec) { return spec_to_json_obj(spec).dump(); }

MarketMakerSpec spec_from_json(const std::string& text) {
    try {
        return spec_from_json_obj(parse_or_fail(text));
    } catch (const json::exception& e) {
        fail(Err::MalformedDocument, std::string("spec document: ") + e.what());
    }
}

std::string state_save(const MarketState& state, const MarketMakerSpec& spec) {
    json j;
    j["version"] = 1;
    j["spec"] = spec_to_json_obj(spec);
    j["quantities"] = state.quantities.q;
    j["collected"] = state.collected;
    j["k"] = state.k;
    j["resolved_outcome"] = state.resolved_outcome;
    json log = json::array();
    for (const auto& t : state.trade_log) {
        log.push_back({{"delta", t.delta.q},
                       {"payment", t.payment},
                       {"prices_before", t.prices_before},
                       {"prices_after", t.prices_after},
                       {"seq", t.seq}});
    }
    j["trade_log"] = std::move(log);
    return j.dump();
}

std::pair<MarketState, MarketMakerSpec> state_load(const std::string& text) {
    try {
        json j = parse_or_fail(text);
        const int version = j.at("version").get<int>();
        if (version != 1)
            fail(Err::VersionMismatch, "unsupported state version " + std::to_string(version));
        MarketMakerSpec spec = spec_from_json_obj(j.at("spec"));
        MarketState s;
        s.quantities = QuantityVector(j.at("quantities").get<std::vector<double>>());
        s.collected = j.at("collected").get<double>();
        s.k = j.at("k").get<double>();
        s.resolved_outcome = j.at("resolved_outcome").get<int>();
        for (const auto& t : j.at("trade_log")) {
            TradeRecord rec;
            rec.delta = QuantityVector(t.at("delta").get<std::vector<double>>());
            rec.payment = t.at("payment").get<double>();
            rec.prices_before = t.at("prices_before").get<std::vector<double>>();
            rec.prices_after = t.at("prices_after").get<std::vector<double>>();
            rec.seq = t.at("seq").get<std::uint64_t>();
            s.trade_log.push_back(std::move(rec));
        }
        return {std::move(s), std::move(spec)};
    } catch (const json::exception& e) {
        fail(Err::MalformedDocument, std::string("state document: ") + e.what());
    }
}

}  // namespace mm
