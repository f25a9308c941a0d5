#pragma once

#include <cstddef>
#include <cstdint>

namespace frontier {

// Seeded, forkable random stream. A stream is identified by (seed, stream_id);
// the same identity always produces the same sequence, on every platform and
// regardless of what other streams have been consumed. fork() derives an
// independent child stream from the identity alone, so per-tree and per-query
// draws do not depend on evaluation order.
//
// The generator is xoshiro256++ with splitmix64 state expansion. std::mt19937
// would do for the raw engine, but the standard distributions are not
// bit-stable across standard libraries and the 2.5 KB engine state is too
// expensive to seed once per scoring query.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01();

    // Uniform in [lo, hi); returns lo when the interval is degenerate.
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller. Two uniforms per call, no caching, so
    // the draw count is a pure function of the call count.
    double normal();

    // Uniform index in [0, n). Unbiased (rejection on the top band). n > 0.
    std::size_t uniform_index(std::size_t n);

    // Independent child stream derived from this stream's identity (not its
    // current position).
    RngStream fork(std::uint64_t child_id) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
};

// splitmix64 mixing step; also used to key streams off hashed content.
std::uint64_t mix64(std::uint64_t x);

// Order-dependent 64-bit combine for deriving stream keys.
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);

}  // namespace frontier
