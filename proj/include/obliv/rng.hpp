#pragma once

#include "obliv/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace obliv {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based seed derivation: every consumer of randomness is keyed by
/// (root seed, stream tag, counter), so trial i of stream s always sees the
/// same generator state regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t s = root;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0x9e3779b97f4a7c15ULL);
    a = splitmix64(s);
    s = a ^ (counter * 0xd1b54a32d192ed03ULL);
    return splitmix64(s);
}

/// Small deterministic PRNG (xorshift-multiply chain over splitmix64).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc908ULL) {
        // warm up so that nearby seeds diverge immediately
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform value in [0, n), n >= 1. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw_domain("Rng::below(0)");
        if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    bool coin() { return (next_u64() & 1) != 0; }

    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Bernoulli(p) for exact rational p; resolution 2^-64 per draw.
    bool bernoulli(const Rational& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        const BigInt threshold = (numerator(p) << 64) / denominator(p);
        return BigInt(next_u64()) < threshold;
    }

    /// Samples an index from exact nonnegative weights (need not sum to 1).
    std::size_t weighted(std::span<const Rational> weights) {
        Rational total = 0;
        for (const auto& w : weights) total += w;
        if (total <= 0) throw_domain("Rng::weighted: empty distribution");
        Rational u = Rational(BigInt(next_u64()), BigInt(1) << 64) * total;
        Rational acc = 0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.size() - 1;
    }

private:
    std::uint64_t state_;
};

}  // namespace obliv
