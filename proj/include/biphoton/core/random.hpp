#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/field.hpp"

namespace biphoton {

/// Counter-based pseudo-random stream: the k-th 64-bit word is the splitmix64
/// finalizer applied to seed + (k+1)*golden, so any word is addressable in
/// O(1) and the sequence is identical on every platform. The algorithm name
/// is recorded in output metadata.
class RandomStream {
public:
    static constexpr const char* algorithm = "splitmix64";

    explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t word(std::uint64_t counter) const {
        return finalize(seed_ + (counter + 1) * golden);
    }

    /// Uniform double in [0, 1).
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    /// Independent stream derived for one cell/task; cheap and collision-safe
    /// for the grid sizes used here.
    RandomStream substream(std::uint64_t key) const {
        return RandomStream(finalize(seed_ ^ finalize(key + golden)));
    }

private:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
};

namespace detail {

/// Sequential uniform supply over one RandomStream.
class UniformSequence {
public:
    explicit UniformSequence(RandomStream s) : stream_(s) {}
    double next() { return stream_.uniform(counter_++); }

private:
    RandomStream stream_;
    std::uint64_t counter_ = 0;
};

/// Knuth product-of-uniforms sampler; only sensible for small means.
inline std::int64_t poisson_knuth(double mean, UniformSequence& u) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= u.next();
    } while (p > limit);
    return k - 1;
}

/// Hoermann's PTRS transformed-rejection sampler for mean >= 10.
inline std::int64_t poisson_ptrs(double mean, UniformSequence& u) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double U = u.next() - 0.5;
        double V = u.next();
        double us = 0.5 - std::abs(U);
        double kf = std::floor((2.0 * a / us + b) * U + mean + 0.43);
        if (us >= 0.07 && V <= v_r) return static_cast<std::int64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && V > us)) continue;
        double k = kf;
        if (std::log(V) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            k * loglam - mean - std::lgamma(k + 1.0))
            return static_cast<std::int64_t>(kf);
    }
}

inline std::int64_t poisson_draw(double mean, UniformSequence& u) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) return poisson_knuth(mean, u);
    return poisson_ptrs(mean, u);
}

}  // namespace detail

/// Independent Poisson draw per cell, deterministic in (seed, cell index).
inline Field2D<std::int64_t> poisson_sample(const RealField2D& mean_field,
                                            const RandomStream& stream) {
    Field2D<std::int64_t> out(mean_field.axis_a, mean_field.axis_b);
    for (size_t k = 0; k < mean_field.values.size(); ++k) {
        double m = mean_field.values[k];
        if (!std::isfinite(m) || m < 0.0)
            throw ContractError("poisson_sample: means must be finite and >= 0");
        detail::UniformSequence u(stream.substream(k));
        out.values[k] = detail::poisson_draw(m, u);
    }
    return out;
}

}  // namespace biphoton
