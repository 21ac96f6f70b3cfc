#pragma once

#include <cstdint>
#include <utility>

namespace rmt::rng {

// Counter-based generator (Philox4x32-10). Output is a pure function of
// (key, counter), so a stream can be placed anywhere in the sequence space
// without generating the values in between. Per-sample streams use the
// sample index as the high counter word, which makes parallel Monte Carlo
// reproducible for any worker count.
class RngStream {
public:
    RngStream() = default;
    RngStream(std::uint64_t key, std::uint64_t block) : key_(key), hi_(block) {}

    // Two raw 64-bit words per tick.
    std::pair<std::uint64_t, std::uint64_t> next_words();

    // Uniform on (0,1] and [0,1).
    double uniform_pos();
    double uniform();

    // Standard normals via Box-Muller; the pair costs one counter tick.
    std::pair<double, double> gaussian_pair();
    double gaussian();

    std::uint64_t key() const { return key_; }
    std::uint64_t block() const { return hi_; }
    std::uint64_t position() const { return lo_; }
    void seek(std::uint64_t position) { lo_ = position; }

private:
    std::uint64_t key_ = 0;
    std::uint64_t hi_ = 0;  // block (sample index)
    std::uint64_t lo_ = 0;  // position within the block
};

}  // namespace rmt::rng
