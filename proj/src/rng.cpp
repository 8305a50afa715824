#include "puc/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace puc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffull),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream & 0xffffffffull),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double RandomStream::uniform01() {
    // 52 random bits at bin midpoints: every value is exactly representable,
    // the smallest is 2^-53 and the largest 1 - 2^-53, so the result is
    // strictly inside (0,1).
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double RandomStream::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::invalid_argument("RandomStream::gamma: shape and rate must be positive");
    }
    if (shape < 1.0) {
        const double u = uniform01();
        return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double RandomStream::beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    double r = x / (x + y);
    if (r <= 0.0) r = std::numeric_limits<double>::min();
    if (r >= 1.0) r = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    return r;
}

std::uint64_t RandomStream::pick_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("RandomStream::pick_index: n must be positive");
    const double u = uniform01();
    auto idx = static_cast<std::uint64_t>(u * static_cast<double>(n));
    return idx >= n ? n - 1 : idx;
}

} // namespace puc
