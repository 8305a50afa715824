#include "puc/partition_family.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace puc {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

void check_u(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("PartitionFamily: u must lie strictly inside (0,1)");
    }
}

// ln(i!) from a compensated running table; lgamma beyond it. The table keeps
// the absolute error near machine precision, which the partition-of-unity
// sums need at their 1e-12 tolerance.
double log_factorial(std::uint64_t i) {
    constexpr std::uint64_t kTableMax = 1u << 16;
    if (i >= kTableMax) return std::lgamma(static_cast<double>(i) + 1.0);

    static std::mutex mutex;
    static std::vector<double> table{0.0, 0.0};
    static double comp = 0.0;

    std::lock_guard<std::mutex> lock(mutex);
    while (table.size() <= i) {
        const double term = std::log(static_cast<double>(table.size()));
        const double y = term - comp;
        const double t = table.back() + y;
        comp = (t - table.back()) - y;
        table.push_back(t);
    }
    return table[i];
}

} // namespace

const char* to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Bernstein: return "bernstein";
        case FamilyKind::NegBinomial: return "negbinomial";
        case FamilyKind::Poisson: return "poisson";
    }
    return "?";
}

PartitionFamily::PartitionFamily(FamilyKind kind, double a) : kind_(kind), a_(a) {
    if (!std::isfinite(a) || a <= 0.0) {
        throw std::invalid_argument("PartitionFamily: parameter a must be positive and finite");
    }
    integer_a_ = a == std::floor(a) && a <= 2147483647.0;
    if (integer_a_) a_int_ = static_cast<std::int64_t>(a);

    switch (kind_) {
        case FamilyKind::Bernstein: {
            if (!integer_a_ || a_int_ < 2) {
                throw std::invalid_argument("Bernstein family requires an integer parameter a >= 2");
            }
            if (a_int_ > 1'000'000) {
                throw std::invalid_argument("Bernstein family: parameter a too large");
            }
            log_binom_.resize(static_cast<std::size_t>(a_int_));
            log_binom_[0] = 0.0;
            for (std::int64_t i = 0; i + 1 < a_int_; ++i) {
                log_binom_[static_cast<std::size_t>(i + 1)] =
                    log_binom_[static_cast<std::size_t>(i)] +
                    std::log(static_cast<double>(a_int_ - 1 - i) / static_cast<double>(i + 1));
            }
            break;
        }
        case FamilyKind::NegBinomial:
            break;
        case FamilyKind::Poisson:
            log_ratio_ = std::log(a_) - std::log(a_ + 1.0);
            break;
    }
}

double PartitionFamily::log_phi(std::uint64_t i, double u) const {
    check_u(u);
    const double di = static_cast<double>(i);
    switch (kind_) {
        case FamilyKind::Bernstein: {
            if (i >= static_cast<std::uint64_t>(a_int_)) return kLogZero;
            return log_binom_[static_cast<std::size_t>(i)] + di * std::log(u) +
                   (a_ - 1.0 - di) * std::log1p(-u);
        }
        case FamilyKind::NegBinomial: {
            double lb = 0.0;
            if (integer_a_) {
                // ln C(a+i-1, i) = sum_{m=1}^{a-1} ln((i+m)/m); small magnitudes,
                // no lgamma cancellation.
                for (std::int64_t m = 1; m < a_int_; ++m) {
                    lb += std::log1p(di / static_cast<double>(m));
                }
            } else {
                lb = std::lgamma(a_ + di) - std::lgamma(di + 1.0) - std::lgamma(a_);
            }
            return lb + di * std::log(u) + a_ * std::log1p(-u);
        }
        case FamilyKind::Poisson: {
            const double lambda = -a_ * std::log1p(-u);
            if (i == 0) return -lambda;
            return di * std::log(lambda) - lambda - log_factorial(i);
        }
    }
    return kLogZero;
}

double PartitionFamily::phi(std::uint64_t i, double u) const { return std::exp(log_phi(i, u)); }

double PartitionFamily::log_alpha(std::uint64_t i) const {
    const double di = static_cast<double>(i);
    switch (kind_) {
        case FamilyKind::Bernstein:
            return -std::log(a_);
        case FamilyKind::NegBinomial:
            return std::log(a_) - std::log(a_ + di) - std::log(a_ + di + 1.0);
        case FamilyKind::Poisson:
            return di * log_ratio_ - std::log(a_ + 1.0);
    }
    return kLogZero;
}

double PartitionFamily::alpha(std::uint64_t i) const {
    switch (kind_) {
        case FamilyKind::Bernstein:
            if (i >= static_cast<std::uint64_t>(a_int_)) {
                throw std::out_of_range("Bernstein alpha: index i must satisfy i < a");
            }
            return 1.0 / a_;
        case FamilyKind::NegBinomial: {
            const double di = static_cast<double>(i);
            return a_ / ((a_ + di) * (a_ + di + 1.0));
        }
        case FamilyKind::Poisson:
            return std::exp(log_alpha(i));
    }
    return 0.0;
}

double PartitionFamily::alpha_cumulative(std::int64_t m) const {
    if (m < 0) return 0.0;
    const double dm = static_cast<double>(m);
    switch (kind_) {
        case FamilyKind::Bernstein:
            return m + 1 >= a_int_ ? 1.0 : (dm + 1.0) / a_;
        case FamilyKind::NegBinomial:
            return (dm + 1.0) / (a_ + dm + 1.0);
        case FamilyKind::Poisson:
            return -std::expm1((dm + 1.0) * log_ratio_);
    }
    return 0.0;
}

double PartitionFamily::alpha_tail(std::int64_t m) const {
    if (m < 0) return 1.0;
    const double dm = static_cast<double>(m);
    switch (kind_) {
        case FamilyKind::Bernstein:
            return m + 1 >= a_int_ ? 0.0 : (a_ - 1.0 - dm) / a_;
        case FamilyKind::NegBinomial:
            return a_ / (a_ + dm + 1.0);
        case FamilyKind::Poisson:
            return std::exp((dm + 1.0) * log_ratio_);
    }
    return 0.0;
}

std::optional<ExactFraction> PartitionFamily::alpha_cumulative_exact(std::int64_t m) const {
    if (!integer_a_) return std::nullopt;
    if (m < -1 || m > (std::int64_t(1) << 50)) return std::nullopt;
    if (m < 0) return ExactFraction{0, 1};
    switch (kind_) {
        case FamilyKind::Bernstein:
            return ExactFraction{std::min(m + 1, a_int_), a_int_};
        case FamilyKind::NegBinomial:
            return ExactFraction{m + 1, a_int_ + m + 1};
        case FamilyKind::Poisson:
            return std::nullopt;
    }
    return std::nullopt;
}

std::uint64_t PartitionFamily::truncation_index(double eps) const {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("truncation_index: eps must lie in (0,1)");
    }
    std::uint64_t idx = 0;
    switch (kind_) {
        case FamilyKind::Bernstein:
            return static_cast<std::uint64_t>(a_int_ - 1);
        case FamilyKind::NegBinomial: {
            const double guess = a_ / eps - a_ - 1.0;
            idx = guess <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(guess));
            break;
        }
        case FamilyKind::Poisson: {
            const double guess = std::log(eps) / log_ratio_ - 1.0;
            idx = guess <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(guess));
            break;
        }
    }
    while (idx > 0 && alpha_tail(static_cast<std::int64_t>(idx) - 1) <= eps) --idx;
    while (alpha_tail(static_cast<std::int64_t>(idx)) > eps) ++idx;
    return idx;
}

double PartitionFamily::component_density(std::uint64_t i, double u) const {
    if (kind_ == FamilyKind::Bernstein && i >= static_cast<std::uint64_t>(a_int_)) {
        throw std::out_of_range("Bernstein component_density: index i must satisfy i < a");
    }
    return std::exp(log_phi(i, u) - log_alpha(i));
}

double PartitionFamily::sample_component(std::uint64_t i, RandomStream& rng) const {
    const double di = static_cast<double>(i);
    switch (kind_) {
        case FamilyKind::Bernstein:
            if (i >= static_cast<std::uint64_t>(a_int_)) {
                throw std::out_of_range("Bernstein sample_component: index i must satisfy i < a");
            }
            return rng.beta(di + 1.0, a_ - di);
        case FamilyKind::NegBinomial:
            return rng.beta(di + 1.0, a_ + 1.0);
        case FamilyKind::Poisson: {
            const double y = rng.gamma(di + 1.0, a_ + 1.0);
            double x = -std::expm1(-y);
            if (x <= 0.0) x = std::numeric_limits<double>::min();
            if (x >= 1.0) x = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
            return x;
        }
    }
    return 0.5;
}

std::uint64_t PartitionFamily::discretize(double u) const {
    check_u(u);
    // Cells are (A(i-1), A(i)] for Bernstein and [A(i-1), A(i)) otherwise,
    // so the answer is the smallest i with A(i) >= u resp. A(i) > u. The
    // closed-form guess is corrected by gallop + bisection; a linear walk
    // could take ~1e17 steps for NegBinomial when u is within a few ulps
    // of 1 and the cumulative weights plateau in double precision.
    const bool strict = kind_ != FamilyKind::Bernstein;
    auto reached = [&](std::uint64_t m) {
        const double c = alpha_cumulative(static_cast<std::int64_t>(m));
        return strict ? c > u : c >= u;
    };

    std::uint64_t guess = 0;
    switch (kind_) {
        case FamilyKind::Bernstein: {
            const double k = std::ceil(a_ * u);
            guess = k < 1.0 ? 0 : static_cast<std::uint64_t>(k) - 1;
            if (guess > static_cast<std::uint64_t>(a_int_ - 1)) {
                guess = static_cast<std::uint64_t>(a_int_ - 1);
            }
            break;
        }
        case FamilyKind::NegBinomial: {
            const double g = std::floor(a_ * u / (1.0 - u));
            guess = g < 0.0 ? 0 : static_cast<std::uint64_t>(g);
            break;
        }
        case FamilyKind::Poisson: {
            const double g = std::floor(std::log1p(-u) / log_ratio_);
            guess = g < 0.0 ? 0 : static_cast<std::uint64_t>(g);
            break;
        }
    }

    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    if (reached(guess)) {
        hi = guess;
        std::uint64_t cur = guess;
        std::uint64_t step = 1;
        bool bracketed = false;
        while (cur > 0) {
            cur = step >= cur ? 0 : cur - step;
            step <<= 1;
            if (reached(cur)) {
                hi = cur;
            } else {
                lo = cur;
                bracketed = true;
                break;
            }
        }
        if (!bracketed) return hi;  // reached all the way down to index 0
    } else {
        lo = guess;
        hi = guess + 1;
        std::uint64_t step = 1;
        while (!reached(hi)) {
            lo = hi;
            step <<= 1;
            hi += step;  // A saturates at 1.0 > u well before overflow
        }
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (reached(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace puc
