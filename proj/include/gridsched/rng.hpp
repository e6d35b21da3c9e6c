// Seeded random stream with an explicit (seed, stream_id) identity.
//
// Every solver run owns one or more streams; identical identities replay
// identical draw sequences, which is what makes runs reproducible and lets
// the parallel strategies promise bitwise equality with their sequential
// references. Floating-point draws are derived from raw 64-bit engine output
// directly instead of going through std distributions, whose sequences are
// not pinned down by the standard.

#ifndef GRIDSCHED_RNG_HPP
#define GRIDSCHED_RNG_HPP

#include <cstdint>
#include <random>

namespace gridsched {

class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer on [lo, hi], both ends inclusive.
    long uniform_int(long lo, long hi);
    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();

    // Derive a statistically independent stream from this stream's identity.
    RngStream substream(std::uint64_t id) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

}  // namespace gridsched

#endif
