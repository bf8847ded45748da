#ifndef QFAC_RNG_HPP
#define QFAC_RNG_HPP

#include <cstdint>

namespace qfac {

// splitmix64; fully specified, so seeded runs are reproducible across
// platforms (std::uniform_int_distribution is not)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), rejection-sampled
    std::uint64_t uniform(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t limit = ~0ull - ~0ull % n;
        std::uint64_t r;
        do { r = next(); } while (r >= limit);
        return r % n;
    }

private:
    std::uint64_t state_;
};

} // namespace qfac

#endif
