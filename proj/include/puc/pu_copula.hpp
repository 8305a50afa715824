#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "puc/partition_family.hpp"
#include "puc/patchwork.hpp"
#include "puc/rng.hpp"

namespace puc {

/// Data-driven partition-of-unity copula: one partition family per
/// coordinate, glued over the unit cube by a patchwork driver built from the
/// empirical ranks.
struct PuCopula {
    std::vector<PartitionFamily> families;
    PatchworkCopula driver;
    double truncation_eps = 1e-10;

    PuCopula(std::vector<PartitionFamily> families_, PatchworkCopula driver_,
             double truncation_eps_ = 1e-10);

    std::size_t dim() const noexcept { return families.size(); }

    /// One draw: sample the driver, discretize each coordinate into its
    /// component index, then draw each output coordinate from that
    /// component's density. Mutates only the stream.
    void sample(RandomStream& rng, std::span<double> out) const;
};

/// Sparse joint component-index probabilities with truncation accounting.
///
/// Entries are sorted lexicographically by index tuple. `total_mass` is the
/// sum of stored probabilities; whatever the per-coordinate truncation and
/// the storage threshold cut away is reported, never renormalized.
class SparseProbTable {
public:
    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return probs_.size(); }

    std::span<const std::uint32_t> index(std::size_t entry) const {
        return {indices_.data() + entry * d_, d_};
    }
    double prob(std::size_t entry) const { return probs_[entry]; }

    double total_mass() const noexcept { return total_mass_; }
    double truncated_mass() const noexcept { return truncated_mass_; }
    double dropped_mass() const noexcept { return dropped_mass_; }
    double requested_eps() const noexcept { return requested_eps_; }

    std::optional<double> find(std::span<const std::uint32_t> idx) const;

    /// Largest stored index in the given coordinate.
    std::uint32_t max_index(std::size_t coordinate) const;

    /// Sum over all other coordinates, per retained index of `coordinate`.
    std::vector<double> marginal_sums(std::size_t coordinate) const;

    /// CSV lines "i_1,...,i_d,p", lexicographic, 17 significant digits.
    void write_csv(std::ostream& out) const;
    static SparseProbTable read_csv(std::istream& in, std::size_t dim);

    /// Table from explicit entries (testing and external models).
    static SparseProbTable from_entries(
        std::size_t dim, std::vector<std::pair<std::vector<std::uint32_t>, double>> entries,
        double requested_eps = 1.0);

private:
    friend SparseProbTable compute_pij(const PuCopula&, const struct PijOptions&);

    std::size_t d_ = 0;
    std::vector<std::uint32_t> indices_;  // flat, entry-major
    std::vector<double> probs_;
    double total_mass_ = 0.0;
    double truncated_mass_ = 0.0;
    double dropped_mass_ = 0.0;
    double requested_eps_ = 0.0;
};

struct PijOptions {
    double store_threshold = 1e-15;     // entries below this go into the residual
    std::size_t max_entries = 5'000'000;  // guard against infeasible truncation budgets
};

/// Joint probabilities p_i: the driver mass of the rectangle
/// prod_k (A_k(i_k - 1), A_k(i_k)], enumerated per coordinate up to the
/// truncation index implied by the copula's eps budget (split evenly across
/// coordinates). Rectangle boundaries are compared exactly where the
/// cumulative weights are rational, so aligned configurations come out
/// bit-exact. Throws std::invalid_argument when the budget would require
/// more than max_entries candidate entries.
SparseProbTable compute_pij(const PuCopula& cop, const PijOptions& options = {});

/// Mixture density sum over the table's entries. One-shot; use
/// DensityEvaluator for grids.
double density(const PuCopula& cop, const SparseProbTable& table, std::span<const double> u);

/// Caches the per-coordinate component index layout of a table so repeated
/// density evaluations cost O(unique indices + entries) each.
class DensityEvaluator {
public:
    DensityEvaluator(const PuCopula& cop, const SparseProbTable& table);

    double operator()(std::span<const double> u) const;

private:
    const PuCopula& cop_;
    const SparseProbTable& table_;
    std::vector<std::vector<std::uint32_t>> unique_;  // per coordinate, sorted
    std::vector<std::uint32_t> slots_;                // entry-major positions into unique_
};

/// count draws, row-major, cut into fixed-size shards with one substream
/// each; identical output for any worker count.
std::vector<double> sample_many(const PuCopula& cop, std::size_t count, std::uint64_t seed,
                                unsigned threads = 0);

/// Empirical upper-tail coefficient P(U > t, V > t) / (1 - t) from 2-d
/// samples (row-major), clipped to [0, 1].
double tail_dependence_estimate(std::span<const double> samples, double t);

} // namespace puc
