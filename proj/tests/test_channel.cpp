#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ira/channel.hpp"

using namespace ira;

TEST_CASE("modulation map") {
    CHECK(modulate({0, 1, 0}) == std::vector<double>{1.0, -1.0, 1.0});
    CHECK(modulate({0, 0, 0, 0}) == std::vector<double>(4, 1.0));
    // Zero-noise round trip through sign threshold.
    std::vector<std::uint8_t> bits{1, 0, 1, 1, 0};
    auto symbols = modulate(bits);
    for (size_t i = 0; i < bits.size(); i++) {
        CHECK((symbols[i] < 0.0 ? 1 : 0) == bits[i]);
    }
}

TEST_CASE("ebno_to_sigma") {
    CHECK(ebno_to_sigma(0.0, 1, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ebno_to_sigma(0.0, 1, 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // +3.0103 dB doubles the linear ratio, shrinking sigma by sqrt(2).
    double lo = ebno_to_sigma(1.0, 1, 4);
    double hi = ebno_to_sigma(1.0 + 10.0 * std::log10(2.0), 1, 4);
    CHECK(lo / hi == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK_THROWS(ebno_to_sigma(0.0, 0, 4));
}

TEST_CASE("llr values") {
    CHECK(llr_value(1.0, std::sqrt(0.5)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(llr_value(0.0, 1.0) == 0.0);
    CHECK(llr_value(-0.25, 1.0) == doctest::Approx(-0.5).epsilon(1e-12));
    // sigma = 0 clamps by sign.
    CHECK(llr_value(0.7, 0.0) == 25.0);
    CHECK(llr_value(-0.7, 0.0) == -25.0);
    // Odd in y, scales as 1/sigma^2.
    for (double y : {0.1, 0.9, 2.0}) {
        CHECK(llr_value(-y, 0.8) == -llr_value(y, 0.8));
        CHECK(llr_value(y, 0.5) == doctest::Approx(4.0 * llr_value(y, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("zero sigma leaves symbols untouched") {
    RandomStream stream(1);
    std::vector<double> symbols{1.0, -1.0, 1.0};
    add_noise(symbols, 0.0, stream);
    CHECK(symbols == std::vector<double>{1.0, -1.0, 1.0});
}

TEST_CASE("noise statistics over a million draws") {
    RandomStream stream(99);
    const int n = 1000000;
    const double sigma = 0.8;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; i++) {
        double x = sigma * stream.gaussian();
        sum += x;
        sum_sq += x * x;
    }
    double mean = sum / n;
    double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 5.0 * sigma / 1000.0);
    CHECK(std::abs(var - sigma * sigma) < 0.01 * sigma * sigma);
}

TEST_CASE("frame substreams are reproducible and distinct") {
    RandomStream a = RandomStream::for_frame(42, 3, 1000);
    RandomStream b = RandomStream::for_frame(42, 3, 1000);
    RandomStream c = RandomStream::for_frame(42, 3, 1001);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; i++) {
        double va = a.gaussian(), vb = b.gaussian(), vc = c.gaussian();
        if (va != vb) all_equal = false;
        if (va != vc) any_diff = true;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("uniform stays in range and bits are balanced") {
    RandomStream stream(7);
    long ones = 0;
    for (int i = 0; i < 100000; i++) {
        double u = stream.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        ones += stream.bit();
    }
    CHECK(ones > 49000);
    CHECK(ones < 51000);
}
