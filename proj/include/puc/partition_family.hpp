#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "puc/rng.hpp"

namespace puc {

enum class FamilyKind { Bernstein, NegBinomial, Poisson };

const char* to_string(FamilyKind kind);

/// Exact fraction num/den with den > 0; used for boundary comparisons where
/// the cumulative component weights are rational.
struct ExactFraction {
    std::int64_t num;
    std::int64_t den;
};

/// One coordinate's partition-of-unity family.
///
/// A family is a parametrized sequence of discrete probabilities phi_i(u)
/// over the nonnegative integers that sums to 1 for every u in (0,1):
///
///   Bernstein:    phi_i(u) = C(a-1,i) u^i (1-u)^(a-1-i),  i < a
///   NegBinomial:  phi_i(u) = C(a+i-1,i) u^i (1-u)^a
///   Poisson:      phi_i(u) = (1-u)^a (a L)^i / i!,  L = -ln(1-u)
///
/// Mixing phi_i over uniform u gives the weights alpha_i (closed forms
/// below); phi_i/alpha_i is the Lebesgue density of the i-th component
/// distribution, and `discretize` inverts a uniform draw into the component
/// index whose law is exactly alpha.
///
/// Instances are immutable and safe to share across threads.
class PartitionFamily {
public:
    PartitionFamily(FamilyKind kind, double a);

    FamilyKind kind() const noexcept { return kind_; }
    double a() const noexcept { return a_; }
    bool integer_a() const noexcept { return integer_a_; }

    /// True for Bernstein, whose support is {0, ..., a-1}.
    bool finite_support() const noexcept { return kind_ == FamilyKind::Bernstein; }

    /// phi_i(u) for u strictly inside (0,1). Bernstein returns 0 for i >= a.
    double phi(std::uint64_t i, double u) const;

    /// Mixture weight alpha_i = integral of phi_i over (0,1).
    /// Throws std::out_of_range for Bernstein with i >= a.
    double alpha(std::uint64_t i) const;

    /// A(m) = sum of alpha_i for i <= m, with A(-1) = 0. Closed form.
    double alpha_cumulative(std::int64_t m) const;

    /// 1 - A(m) in closed form (no cancellation).
    double alpha_tail(std::int64_t m) const;

    /// A(m) as an exact fraction when the family admits one
    /// (integer-parameter Bernstein and NegBinomial).
    std::optional<ExactFraction> alpha_cumulative_exact(std::int64_t m) const;

    /// Smallest I with alpha_tail(I) <= eps. Can be astronomically large for
    /// NegBinomial at tiny eps; callers guard enumeration cost themselves.
    std::uint64_t truncation_index(double eps) const;

    /// Component density f_i(u) = phi_i(u) / alpha_i.
    double component_density(std::uint64_t i, double u) const;

    /// One draw with density f_i: Beta(i+1, a-i) for Bernstein,
    /// Beta(i+1, a+1) for NegBinomial, 1-exp(-Y) with Y ~ Gamma(i+1, a+1)
    /// for Poisson.
    double sample_component(std::uint64_t i, RandomStream& rng) const;

    /// Component index of the cell containing u, i.e. the unique i with u in
    /// (A(i-1), A(i)] (Bernstein) or [A(i-1), A(i)) (NegBinomial, Poisson).
    std::uint64_t discretize(double u) const;

private:
    double log_phi(std::uint64_t i, double u) const;
    double log_alpha(std::uint64_t i) const;

    FamilyKind kind_;
    double a_;
    bool integer_a_ = false;
    std::int64_t a_int_ = 0;
    double log_ratio_ = 0.0;              // Poisson: ln(a/(a+1))
    std::vector<double> log_binom_;       // Bernstein: ln C(a-1, i)
};

} // namespace puc
