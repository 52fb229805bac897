#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ira/baseline.hpp"
#include "ira/channel.hpp"

using namespace ira;

namespace {

std::vector<std::uint8_t> random_payload(int len, RandomStream& stream) {
    std::vector<std::uint8_t> payload(len);
    for (auto& b : payload) b = stream.bit();
    return payload;
}

std::vector<double> bits_to_llrs(const std::vector<std::uint8_t>& bits,
                                 double magnitude = 8.0) {
    std::vector<double> llrs(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        llrs[i] = bits[i] ? -magnitude : magnitude;
    }
    return llrs;
}

}  // namespace

TEST_CASE("spec validation") {
    ConvCodeSpec good;
    good.validate();

    ConvCodeSpec dup = good;
    dup.generators[1] = dup.generators[0];
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    ConvCodeSpec no_const = good;
    no_const.generators[0] = 0462;  // even: constant tap missing
    CHECK_THROWS_AS(no_const.validate(), std::invalid_argument);
}

TEST_CASE("encode length and linearity") {
    ConvCodeSpec spec;
    RandomStream stream(3);
    auto zero = conv_encode(spec, std::vector<std::uint8_t>(192, 0));
    CHECK(zero.size() == 800);
    CHECK(zero == std::vector<std::uint8_t>(800, 0));

    auto a = random_payload(192, stream);
    auto b = random_payload(192, stream);
    std::vector<std::uint8_t> ab(192);
    for (int i = 0; i < 192; i++) ab[i] = a[i] ^ b[i];
    auto ea = conv_encode(spec, a);
    auto eb = conv_encode(spec, b);
    auto eab = conv_encode(spec, ab);
    for (int i = 0; i < 800; i++) {
        CHECK(eab[i] == (ea[i] ^ eb[i]));
    }
}

TEST_CASE("impulse response equals the generator taps") {
    ConvCodeSpec spec;
    std::vector<std::uint8_t> impulse(192, 0);
    impulse[0] = 1;
    auto out = conv_encode(spec, impulse);
    for (int t = 0; t < 192 + spec.tail_bits; t++) {
        for (int g = 0; g < 4; g++) {
            int expected = t <= 8 ? (spec.generators[g] >> (8 - t)) & 1 : 0;
            CHECK(out[4 * t + g] == expected);
        }
    }
}

TEST_CASE("viterbi recovers noiseless frames") {
    ConvCodeSpec spec;
    RandomStream stream(17);
    for (int trial = 0; trial < 1000; trial++) {
        auto payload = random_payload(192, stream);
        auto coded = conv_encode(spec, payload);
        auto decoded = viterbi_decode(spec, bits_to_llrs(coded));
        CHECK(decoded == payload);
    }
}

TEST_CASE("viterbi corrects one flipped bit anywhere") {
    ConvCodeSpec spec;
    RandomStream stream(19);
    auto payload = random_payload(192, stream);
    auto coded = conv_encode(spec, payload);
    for (size_t flip = 0; flip < coded.size(); flip++) {
        auto corrupted = coded;
        corrupted[flip] ^= 1;
        auto decoded = viterbi_decode(spec, bits_to_llrs(corrupted));
        CHECK(decoded == payload);
    }
}

TEST_CASE("soft decisions beat a hard tie") {
    ConvCodeSpec spec;
    RandomStream stream(23);
    auto payload = random_payload(192, stream);
    auto coded = conv_encode(spec, payload);
    auto llrs = bits_to_llrs(coded, 6.0);
    // Weaken a handful of positions without flipping them.
    for (int i = 0; i < 40; i++) {
        llrs[stream.next_u64() % llrs.size()] *= 0.05;
    }
    CHECK(viterbi_decode(spec, llrs) == payload);
}

TEST_CASE("ber improves with snr on seeded runs") {
    ConvCodeSpec spec;
    auto run_ber = [&](double ebno_db, int frames) {
        long errors = 0, total = 0;
        double sigma = ebno_to_sigma(ebno_db, 192, 800);
        for (int f = 0; f < frames; f++) {
            RandomStream stream = RandomStream::for_frame(777, 0, f);
            auto payload = random_payload(192, stream);
            auto symbols = modulate(conv_encode(spec, payload));
            add_noise(symbols, sigma, stream);
            auto decoded = viterbi_decode(spec, llr_vector(symbols, sigma));
            for (int i = 0; i < 192; i++) {
                errors += (decoded[i] ^ payload[i]) & 1;
            }
            total += 192;
        }
        return static_cast<double>(errors) / static_cast<double>(total);
    };
    double ber_low = run_ber(2.0, 150);
    double ber_high = run_ber(6.0, 150);
    CHECK(ber_low > 0.0);
    CHECK(ber_high < ber_low / 4.0);
}

TEST_CASE("length validation") {
    ConvCodeSpec spec;
    CHECK_THROWS(viterbi_decode(spec, std::vector<double>(799, 1.0)));
}
