#include "mm/types.hpp"

#include <cmath>

namespace mm {

const char* err_name(Err e) {
    switch (e) {
        case Err::NotNormalized: return "NotNormalized";
        case Err::NegativeEntry: return "NegativeEntry";
        case Err::ZeroEntryInStrictMode: return "ZeroEntryInStrictMode";
        case Err::InvalidParameter: return "InvalidParameter";
        case Err::LossMismatch: return "LossMismatch";
        case Err::NoCorrespondence: return "NoCorrespondence";
        case Err::NonSymmetric: return "NonSymmetric";
        case Err::MismatchedOutcomes: return "MismatchedOutcomes";
        case Err::DomainViolation: return "DomainViolation";
        case Err::RangeViolation: return "RangeViolation";
        case Err::UndefinedScore: return "UndefinedScore";
        case Err::SolverFailure: return "SolverFailure";
        case Err::PriceOutOfRange: return "PriceOutOfRange";
        case Err::Unattainable: return "Unattainable";
        case Err::DegenerateSlope: return "DegenerateSlope";
        case Err::MarketResolved: return "MarketResolved";
        case Err::MalformedDocument: return "MalformedDocument";
        case Err::VersionMismatch: return "VersionMismatch";
        case Err::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

int err_category(Err e) {
    switch (e) {
        case Err::NotNormalized:
        case Err::NegativeEntry:
        case Err::ZeroEntryInStrictMode:
        case Err::InvalidParameter:
        case Err::LossMismatch:
        case Err::NoCorrespondence:
        case Err::NonSymmetric:
        case Err::MismatchedOutcomes:
            return 2;
        case Err::MalformedDocument:
        case Err::VersionMismatch:
        case Err::IoFailure:
            return 4;
        default:
            return 3;
    }
}

ProbVector ProbVector::validate(std::span<const double> v, bool strict) {
    if (v.size() < 2) fail(Err::InvalidParameter, "probability vector needs at least 2 outcomes");
    double sum = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) fail(Err::InvalidParameter, "non-finite probability entry");
        if (x < 0.0) fail(Err::NegativeEntry, "negative probability entry");
        if (strict && x == 0.0) fail(Err::ZeroEntryInStrictMode, "zero entry in strict probability vector");
        sum += x;
    }
    if (std::fabs(sum - 1.0) > kProbTol)
        fail(Err::NotNormalized, "probabilities sum to " + std::to_string(sum));
    return ProbVector(std::vector<double>(v.begin(), v.end()));
}

ProbVector ProbVector::uniform(std::size_t n) {
    return validate(std::vector<double>(n, 1.0 / static_cast<double>(n)), true);
}

bool ProbVector::strictly_positive() const {
    for (double x : p_)
        if (x <= 0.0) return false;
    return true;
}

QuantityVector::QuantityVector(std::vector<double> v) : q(std::move(v)) {
    for (double x : q)
        if (!std::isfinite(x)) fail(Err::InvalidParameter, "non-finite quantity entry");
}

QuantityVector QuantityVector::zeros(std::size_t n) {
    return QuantityVector(std::vector<double>(n, 0.0));
}

QuantityVector QuantityVector::plus(const QuantityVector& d) const {
    if (d.size() != size()) fail(Err::MismatchedOutcomes, "quantity vector size mismatch");
    std::vector<double> out(q);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += d[i];
    return QuantityVector(std::move(out));
}

WealthVector wealth_from(const QuantityVector& q, double collected) {
    std::vector<double> m(q.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = collected - q[i];
    return WealthVector(std::move(m));
}

}  // namespace mm
