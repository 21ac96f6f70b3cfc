#include "rng.hpp"

#include <cmath>

namespace rmt::rng {

namespace {

// Philox4x32-10 (Salmon et al., SC 2011).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t out0 = hi1 ^ ctr[1] ^ key[0];
    const std::uint32_t out2 = hi0 ^ ctr[3] ^ key[1];
    ctr[0] = out0;
    ctr[1] = lo1;
    ctr[2] = out2;
    ctr[3] = lo0;
}

inline void philox10(std::uint32_t ctr[4], std::uint32_t key[2]) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        philox_round(ctr, key);
    }
}

constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53

// 53-bit mantissa conversions; the +1 variant lands in (0,1].
inline double to_unit_half_open(std::uint64_t w) {
    return static_cast<double>(w >> 11) * kInv53;
}
inline double to_unit_pos(std::uint64_t w) {
    return static_cast<double>((w >> 11) + 1ull) * kInv53;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> RngStream::next_words() {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(lo_),
        static_cast<std::uint32_t>(lo_ >> 32),
        static_cast<std::uint32_t>(hi_),
        static_cast<std::uint32_t>(hi_ >> 32),
    };
    std::uint32_t key[2] = {
        static_cast<std::uint32_t>(key_),
        static_cast<std::uint32_t>(key_ >> 32),
    };
    philox10(ctr, key);
    ++lo_;
    const std::uint64_t w0 = (static_cast<std::uint64_t>(ctr[1]) << 32) | ctr[0];
    const std::uint64_t w1 = (static_cast<std::uint64_t>(ctr[3]) << 32) | ctr[2];
    return {w0, w1};
}

double RngStream::uniform_pos() {
    return to_unit_pos(next_words().first);
}

double RngStream::uniform() {
    return to_unit_half_open(next_words().first);
}

std::pair<double, double> RngStream::gaussian_pair() {
    const auto [w0, w1] = next_words();
    const double u1 = to_unit_pos(w0);
    const double u2 = to_unit_half_open(w1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

double RngStream::gaussian() {
    return gaussian_pair().first;
}

}  // namespace rmt::rng
