#include "puc/patchwork.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace puc {

namespace {

constexpr std::size_t kMaxDim = 32;

void check_point_size(std::span<const double> u, std::size_t d) {
    if (u.size() != d) throw std::invalid_argument("point dimension mismatch");
}

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Patch index m in 1..n with (m-1)/n < u <= m/n.
std::size_t patch_of(double u, std::size_t n) {
    const double dn = static_cast<double>(n);
    double k = std::ceil(u * dn);
    std::size_t m = k < 1.0 ? 1 : static_cast<std::size_t>(k);
    if (m > n) m = n;
    while (m > 1 && u <= static_cast<double>(m - 1) / dn) --m;
    while (m < n && u > static_cast<double>(m) / dn) ++m;
    return m;
}

} // namespace

const char* to_string(CellCopulaKind kind) {
    switch (kind) {
        case CellCopulaKind::UpperFrechet: return "upper";
        case CellCopulaKind::LowerFrechet: return "lower";
        case CellCopulaKind::Rook: return "rook";
    }
    return "?";
}

PatchworkCopula::PatchworkCopula(RankData ranks, CellCopulaKind kind)
    : ranks_(std::move(ranks)), kind_(kind) {
    if (ranks_.d < 2 || ranks_.ranks.size() != ranks_.d || ranks_.n == 0) {
        throw std::invalid_argument("PatchworkCopula: invalid rank data");
    }
    if (ranks_.d > kMaxDim) {
        throw std::invalid_argument("PatchworkCopula: dimension too large");
    }
    if (kind_ == CellCopulaKind::LowerFrechet && ranks_.d != 2) {
        throw LowerFrechetDimensionError(
            "lower Fréchet cells are only available in two dimensions");
    }
    inverse_.assign(ranks_.d, std::vector<std::uint32_t>(ranks_.n));
    for (std::size_t c = 0; c < ranks_.d; ++c) {
        for (std::size_t k = 0; k < ranks_.n; ++k) {
            inverse_[c][ranks_.ranks[c][k] - 1] = static_cast<std::uint32_t>(k);
        }
    }
}

double PatchworkCopula::density(std::span<const double> u) const {
    check_point_size(u, d());
    if (kind_ != CellCopulaKind::Rook) {
        throw SingularCopulaError("Fréchet shuffles are singular and have no density");
    }
    for (double x : u) {
        if (!(x > 0.0 && x < 1.0)) {
            throw std::domain_error("density: point must lie strictly inside the cube");
        }
    }
    const std::size_t cell = inverse_[0][patch_of(u[0], n()) - 1];
    for (std::size_t c = 1; c < d(); ++c) {
        if (ranks_.ranks[c][cell] != patch_of(u[c], n())) return 0.0;
    }
    double dens = 1.0;
    for (std::size_t c = 1; c < d(); ++c) dens *= static_cast<double>(n());
    return dens;
}

double PatchworkCopula::cdf(std::span<const double> u) const {
    check_point_size(u, d());
    for (double x : u) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::domain_error("cdf: point must lie in the closed unit cube");
        }
    }
    const double dn = static_cast<double>(n());
    double acc = 0.0;
    for (std::size_t k = 0; k < n(); ++k) {
        switch (kind_) {
            case CellCopulaKind::Rook: {
                double prod = 1.0;
                for (std::size_t c = 0; c < d(); ++c) {
                    prod *= clamp01(dn * u[c] - ranks_.ranks[c][k] + 1.0);
                    if (prod == 0.0) break;
                }
                acc += prod;
                break;
            }
            case CellCopulaKind::UpperFrechet: {
                double m = 1.0;
                for (std::size_t c = 0; c < d(); ++c) {
                    m = std::min(m, clamp01(dn * u[c] - ranks_.ranks[c][k] + 1.0));
                    if (m == 0.0) break;
                }
                acc += m;
                break;
            }
            case CellCopulaKind::LowerFrechet: {
                const double x = clamp01(dn * u[0] - ranks_.ranks[0][k] + 1.0);
                const double y = clamp01(dn * u[1] - ranks_.ranks[1][k] + 1.0);
                acc += std::max(x + y - 1.0, 0.0);
                break;
            }
        }
    }
    return acc / dn;
}

std::size_t PatchworkCopula::uniforms_per_sample() const noexcept {
    return kind_ == CellCopulaKind::Rook ? d() : 1;
}

void PatchworkCopula::point_from_cell(std::size_t cell, std::span<const double> z,
                                      std::span<double> out) const {
    if (cell >= n()) throw std::out_of_range("point_from_cell: cell index out of range");
    if (z.size() != uniforms_per_sample() || out.size() != d()) {
        throw std::invalid_argument("point_from_cell: size mismatch");
    }
    const double dn = static_cast<double>(n());
    switch (kind_) {
        case CellCopulaKind::UpperFrechet:
            for (std::size_t c = 0; c < d(); ++c) {
                out[c] = (ranks_.ranks[c][cell] - 1.0 + z[0]) / dn;
            }
            break;
        case CellCopulaKind::LowerFrechet:
            out[0] = (ranks_.ranks[0][cell] - 1.0 + z[0]) / dn;
            out[1] = (ranks_.ranks[1][cell] - z[0]) / dn;
            break;
        case CellCopulaKind::Rook:
            for (std::size_t c = 0; c < d(); ++c) {
                out[c] = (ranks_.ranks[c][cell] - 1.0 + z[c]) / dn;
            }
            break;
    }
}

void PatchworkCopula::sample(RandomStream& rng, std::span<double> out) const {
    const std::size_t cell = static_cast<std::size_t>(rng.pick_index(n()));
    std::array<double, kMaxDim> z;
    const std::size_t nz = uniforms_per_sample();
    for (std::size_t i = 0; i < nz; ++i) z[i] = rng.uniform01();
    point_from_cell(cell, std::span<const double>(z.data(), nz), out);
}

} // namespace puc
