// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace ggp {

// SplitMix64 (Steele, Lea & Flood; Vigna's fixed-increment form). Output i
// is a pure function of seed + i * golden, which makes streams counter-based
// and cheap to split by hashing.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

// Stream derivation for shards and independent children.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    SplitMix64 s(a ^ (0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2)));
    s();
    return s();
}

// Double-precision variates on top of SplitMix64. All algorithms are exact
// (rejection, not table-driven), so results are platform independent.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // strictly inside (0,1)
    double uniform01() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal(); // Marsaglia polar, second deviate cached
    double exponential();
    double cauchy(); // ratio of independent normals

    // unit-scale Gamma(shape); Marsaglia-Tsang without the squeeze step,
    // boosted by X_{mu+1} U^{1/mu} for shape < 1
    double gamma(double shape);

  private:
    SplitMix64 gen_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

} // namespace ggp
