#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mm/errors.hpp"

namespace mm {

inline constexpr double kProbTol = 1e-9;  // absolute tolerance on normalization

// Probability vector over N >= 2 outcomes. Validated on construction:
// entries nonnegative, sum within kProbTol of 1. Normalization is checked,
// never repaired. The strict refinement additionally requires every entry > 0
// (subjective estimates and scoring-rule weights must be strict).
class ProbVector {
public:
    static ProbVector validate(std::span<const double> v, bool strict = false);
    static ProbVector uniform(std::size_t n);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& entries() const { return p_; }
    const double* data() const { return p_.data(); }
    bool strictly_positive() const;

    auto begin() const { return p_.begin(); }
    auto end() const { return p_.end(); }

private:
    explicit ProbVector(std::vector<double> p) : p_(std::move(p)) {}
    std::vector<double> p_;
};

// Outstanding shares per outcome; negative entries encode net short interest.
struct QuantityVector {
    std::vector<double> q;

    QuantityVector() = default;
    explicit QuantityVector(std::vector<double> v);
    static QuantityVector zeros(std::size_t n);

    std::size_t size() const { return q.size(); }
    double operator[](std::size_t i) const { return q[i]; }
    double& operator[](std::size_t i) { return q[i]; }
    QuantityVector plus(const QuantityVector& d) const;
};

// Money across outcome states.
struct WealthVector {
    std::vector<double> m;

    WealthVector() = default;
    explicit WealthVector(std::vector<double> v) : m(std::move(v)) {}

    std::size_t size() const { return m.size(); }
    double operator[](std::size_t i) const { return m[i]; }
};

// m_j = collected - q_j: money in hand minus the payout owed if j realizes.
WealthVector wealth_from(const QuantityVector& q, double collected);

}  // namespace mm
