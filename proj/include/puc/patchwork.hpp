#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "puc/rank_data.hpp"
#include "puc/rng.hpp"

namespace puc {

enum class CellCopulaKind { UpperFrechet, LowerFrechet, Rook };

const char* to_string(CellCopulaKind kind);

/// Raised when a density is requested from a copula that has none.
class SingularCopulaError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The lower Fréchet bound is a copula only in two dimensions.
class LowerFrechetDimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Patchwork copula over the rank cells of an n x d sample.
///
/// The unit cube is cut into n^d boxes of side 1/n; the boxes addressed by
/// the rank tuples (r_1k, ..., r_dk) each receive mass 1/n filled with a
/// rescaled cell copula: comonotone (upper Fréchet), countermonotone (lower
/// Fréchet, d = 2 only) or independent (rook). All marginals are uniform by
/// construction.
///
/// Immutable; density/cdf are pure, sample mutates only the given stream.
class PatchworkCopula {
public:
    PatchworkCopula(RankData ranks, CellCopulaKind kind);

    std::size_t n() const noexcept { return ranks_.n; }
    std::size_t d() const noexcept { return ranks_.d; }
    std::size_t dim() const noexcept { return ranks_.d; }
    CellCopulaKind kind() const noexcept { return kind_; }
    const RankData& ranks() const noexcept { return ranks_; }

    /// Copula density at a point strictly inside the cube. Only the rook
    /// kind has one: n^(d-1) on the rank cells and 0 elsewhere. The Fréchet
    /// shuffles are singular and raise SingularCopulaError.
    double density(std::span<const double> u) const;

    /// Copula distribution function on the closed cube.
    double cdf(std::span<const double> u) const;

    /// One draw; mutates only the stream.
    void sample(RandomStream& rng, std::span<double> out) const;

    /// Number of uniforms consumed per draw after the cell pick:
    /// 1 for the shuffles, d for rook.
    std::size_t uniforms_per_sample() const noexcept;

    /// Deterministic sampling kernel: maps a cell index and the uniforms to
    /// the output point. Exposed so the per-step arithmetic is testable.
    void point_from_cell(std::size_t cell, std::span<const double> z,
                         std::span<double> out) const;

    /// Cell whose rank in the given coordinate equals r (1-based).
    std::size_t cell_of_rank(std::size_t coordinate, std::uint32_t r) const {
        return inverse_[coordinate][r - 1];
    }

private:
    RankData ranks_;
    CellCopulaKind kind_;
    std::vector<std::vector<std::uint32_t>> inverse_;  // rank value -> cell index
};

} // namespace puc
