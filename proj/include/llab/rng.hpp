#pragma once

#include <cstdint>

namespace llab {

// splitmix64: tiny, fast, and byte-identical on every platform, which the
// report determinism guarantee needs. Only test corpora and the --seed'd
// CLI generators draw from it; the core algorithms are deterministic.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Multiply-shift; deterministic across platforms.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool coin() { return next() >> 63; }

  private:
    uint64_t state_;
};

}  // namespace llab
