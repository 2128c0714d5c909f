#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace grann {

// Deterministic random source. std::uniform_int_distribution is not pinned
// down by the standard, so ranges are produced by rejection sampling on the
// raw mt19937_64 stream to keep runs reproducible across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r < limit) return r % bound;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(below(span));
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace grann
