#pragma once

#include <cstdint>
#include <random>

namespace puc {

/// Seeded random stream with the variate generators the samplers need.
///
/// A stream is identified by (seed, stream id). Substreams derived from the
/// same master seed are independent; the draw sequence for a given pair is
/// reproducible run to run, which is what makes simulation output
/// byte-identical under a fixed seed regardless of worker count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

    /// Stream with the same master seed and a different stream id.
    RandomStream substream(std::uint64_t stream) const { return RandomStream(seed_, stream); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    /// Uniform draw strictly inside (0,1).
    double uniform01();

    /// Standard normal draw (Box-Muller).
    double normal();

    /// Gamma draw with the given shape and rate (Marsaglia-Tsang).
    double gamma(double shape, double rate = 1.0);

    /// Beta(a, b) draw via two gamma draws.
    double beta(double a, double b);

    /// Uniform index in {0, ..., n-1}.
    std::uint64_t pick_index(std::uint64_t n);

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

} // namespace puc
