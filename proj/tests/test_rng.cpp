#include <doctest.h>

#include <cmath>
#include <set>

#include "rng.hpp"

using rmt::rng::RngStream;

TEST_CASE("identical (key, counter) gives identical output") {
    RngStream a(123456789, 42);
    RngStream b(123456789, 42);
    for (int i = 0; i < 100; ++i) {
        const auto wa = a.next_words();
        const auto wb = b.next_words();
        CHECK(wa.first == wb.first);
        CHECK(wa.second == wb.second);
    }
}

TEST_CASE("philox4x32-10 known-answer for zero key and counter") {
    // Reference vector from the Random123 test suite, packed little-endian.
    RngStream s(0, 0);
    const auto [w0, w1] = s.next_words();
    CHECK(w0 == 0xe169c58d6627e8d5ull);
    CHECK(w1 == 0x9b00dbd8bc57ac4cull);
}

TEST_CASE("distinct blocks and keys decorrelate") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t key = 0; key < 4; ++key) {
        for (std::uint64_t block = 0; block < 64; ++block) {
            RngStream s(key, block);
            seen.insert(s.next_words().first);
        }
    }
    CHECK(seen.size() == 4 * 64);
}

TEST_CASE("seek repositions the stream") {
    RngStream a(7, 3);
    a.next_words();
    a.next_words();
    const auto w = a.next_words();
    RngStream b(7, 3);
    b.seek(2);
    const auto v = b.next_words();
    CHECK(w.first == v.first);
}

TEST_CASE("uniform ranges") {
    RngStream s(99, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = s.uniform_pos();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("gaussian sample mean and variance at CLT accuracy") {
    RngStream s(2024, 0);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n / 2; ++i) {
        const auto [a, b] = s.gaussian_pair();
        sum += a + b;
        sum2 += a * a + b * b;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 4e-3);        // 4 / sqrt(1e6)
    CHECK(std::abs(var - 1.0) < 1e-2);
}

TEST_CASE("parallel substreams look independent") {
    // correlation between per-block streams
    const int n = 20000;
    double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
    RngStream a(5, 0), b(5, 1);
    for (int i = 0; i < n; ++i) {
        const double x = a.gaussian_pair().first;
        const double y = b.gaussian_pair().first;
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
        syy += y * y;
    }
    const double corr = (sxy - sx * sy / n) /
                        std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
    CHECK(std::abs(corr) < 0.03);  // ~4 sigma at n = 2e4
}
