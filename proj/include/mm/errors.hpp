#pragma once

#include <stdexcept>
#include <string>

namespace mm {

enum class Err {
    // validation
    NotNormalized,
    NegativeEntry,
    ZeroEntryInStrictMode,
    InvalidParameter,
    LossMismatch,
    NoCorrespondence,
    NonSymmetric,
    MismatchedOutcomes,
    // domain / solver
    DomainViolation,
    RangeViolation,
    UndefinedScore,
    SolverFailure,
    PriceOutOfRange,
    Unattainable,
    DegenerateSlope,
    MarketResolved,
    // i/o
    MalformedDocument,
    VersionMismatch,
    IoFailure,
};

const char* err_name(Err e);

// 2 = validation, 3 = domain/solver, 4 = i/o (CLI exit-code contract)
int err_category(Err e);

class MarketError : public std::runtime_error {
public:
    MarketError(Err code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
    throw MarketError(code, what);
}

}  // namespace mm
