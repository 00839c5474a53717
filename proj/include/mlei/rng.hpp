#ifndef MLEI_RNG_HPP
#define MLEI_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace mlei {

// Deterministic random source.  One root seed is split into independent
// named streams (splitmix64 over a FNV-1a hash of the label) so that adding
// a consumer never perturbs the draws seen by existing ones.  The uniform
// and Gaussian transforms are implemented here rather than through
// std::*_distribution to keep the byte-for-byte reproducibility contract
// independent of the standard library's internals.
class rng {
public:
    explicit rng(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t derive(std::uint64_t seed, std::string_view label)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return splitmix64(seed ^ h);
    }

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index)
    {
        return splitmix64(seed ^ splitmix64(index + 0x9e3779b97f4a7c15ull));
    }

    rng stream(std::string_view label) const { return rng(derive(seed0_(), label)); }
    rng stream(std::uint64_t index) const { return rng(derive(seed0_(), index)); }

    // Uniform in [0, 1).
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n)
    {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller (no cached spare, so the consumption
    // pattern is one pair of uniforms per call).
    double normal()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
    static std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    // Streams are derived from a fresh copy of the engine state; hashing the
    // next raw output would advance this generator, so instead derive from
    // a snapshot of the seed sequence.  We keep the original seed around.
    class seeded_engine : public std::mt19937_64 {
    public:
        explicit seeded_engine(std::uint64_t s) : std::mt19937_64(s), seed_(s) {}
        std::uint64_t seed_value() const { return seed_; }

    private:
        std::uint64_t seed_;
    };

    std::uint64_t seed0_() const { return engine_.seed_value(); }

    seeded_engine engine_;
};

} // namespace mlei

#endif
