#pragma once

#include <cstdint>
#include <random>

namespace eofcbo {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One independent Gaussian stream. Streams are derived from a master seed by a
// counter-based split so that serial and parallel execution draw identically.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Stream keyed by (master seed, level, particle). Level 0 is the convention for
// single-species runs, so a one-level multi-species run replays them exactly.
inline RngStream make_stream(std::uint64_t seed, std::uint64_t level, std::uint64_t particle) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (0x51ed2701ab7c3d5fULL + level * 0xd6e8feb86659fd93ULL);
    std::uint64_t b = splitmix64(s);
    s = b ^ (0x2545f4914f6cdd1dULL + particle * 0x9e3779b97f4a7c15ULL);
    return RngStream(splitmix64(s));
}

}  // namespace eofcbo
