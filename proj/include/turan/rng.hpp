#pragma once

#include <cstdint>
#include <string_view>

namespace turan {

/// SplitMix64. Fully specified integer arithmetic, so every seeded object
/// is bit-identical across platforms and compilers.
class Rng {
public:
    static constexpr std::string_view algorithm = "splitmix64";

    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    std::uint64_t uniform(std::uint64_t bound)
    {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    /// True with probability num/den.
    bool bernoulli(std::uint64_t num, std::uint64_t den) { return uniform(den) < num; }

    /// Independent child stream; the parent is left untouched.
    Rng split(std::uint64_t stream) const
    {
        Rng mixer(state_ ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        return Rng(mixer.next());
    }

private:
    std::uint64_t state_;
};

} // namespace turan
