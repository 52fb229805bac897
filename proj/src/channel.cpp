#include "ira/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ira {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

RandomStream RandomStream::for_frame(std::uint64_t master_seed,
                                     std::uint64_t point_index,
                                     std::uint64_t frame_index) {
    std::uint64_t mixed = splitmix64(master_seed);
    mixed = splitmix64(mixed ^ (point_index + 0x100000001ull));
    mixed = splitmix64(mixed ^ (frame_index + 0x200000003ull));
    return RandomStream(mixed);
}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform() {
    // 53 random bits into [0, 1); fully specified, no distribution objects.
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log1p(-u1));  // log(1-u1), never log(0)
    double z0 = radius * std::cos(kTwoPi * u2);
    spare_ = radius * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return z0;
}

std::uint8_t RandomStream::bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

double ebno_to_sigma(double ebno_db, int info_bits, int channel_bits) {
    if (info_bits <= 0 || channel_bits <= 0) {
        throw std::invalid_argument("ebno_to_sigma: bit counts must be positive");
    }
    double rate = static_cast<double>(info_bits) / channel_bits;
    double ebno = std::pow(10.0, ebno_db / 10.0);
    return std::sqrt(1.0 / (2.0 * rate * ebno));
}

ChannelParams make_channel_params(double ebno_db, int info_bits, int channel_bits) {
    return ChannelParams{ebno_db, ebno_to_sigma(ebno_db, info_bits, channel_bits),
                         info_bits, channel_bits};
}

std::vector<double> modulate(const std::vector<std::uint8_t>& bits) {
    std::vector<double> symbols(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        symbols[i] = (bits[i] & 1) ? -1.0 : 1.0;
    }
    return symbols;
}

void add_noise(std::vector<double>& symbols, double sigma, RandomStream& stream) {
    if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
    if (sigma == 0.0) return;
    for (double& y : symbols) {
        y += sigma * stream.gaussian();
    }
}

double llr_value(double y, double sigma) {
    if (sigma <= 0.0) {
        if (y > 0.0) return 25.0;
        if (y < 0.0) return -25.0;
        return 0.0;
    }
    return 2.0 * y / (sigma * sigma);
}

std::vector<double> llr_vector(const std::vector<double>& observations, double sigma) {
    std::vector<double> llrs(observations.size());
    for (size_t i = 0; i < observations.size(); i++) {
        llrs[i] = llr_value(observations[i], sigma);
    }
    return llrs;
}

}  // namespace ira
