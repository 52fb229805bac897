#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ira {

// Deterministic random stream. Frame substreams are derived from
// (master seed, point index, frame index) so results do not depend on how
// frames are batched across workers.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);
    static RandomStream for_frame(std::uint64_t master_seed,
                                  std::uint64_t point_index,
                                  std::uint64_t frame_index);

    std::uint64_t next_u64();
    double uniform();   // [0, 1)
    double gaussian();  // standard normal (Box-Muller)
    std::uint8_t bit();

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

enum class EbAccounting { Payload, Frame };

struct ChannelParams {
    double ebno_db = 0.0;
    double sigma = 0.0;  // noise standard deviation per real dimension
    int info_bits = 0;
    int channel_bits = 0;
};

// sigma^2 = 1 / (2 * (info_bits/channel_bits) * 10^(ebno_db/10)), unit
// symbol energy.
double ebno_to_sigma(double ebno_db, int info_bits, int channel_bits);
ChannelParams make_channel_params(double ebno_db, int info_bits, int channel_bits);

// BPSK: bit 0 -> +1.0, bit 1 -> -1.0.
std::vector<double> modulate(const std::vector<std::uint8_t>& bits);

// y_i = x_i + n_i, n_i iid N(0, sigma^2) drawn from the stream.
void add_noise(std::vector<double>& symbols, double sigma, RandomStream& stream);

// L = 2y/sigma^2. sigma = 0 maps to clamped certainty by sign of y.
double llr_value(double y, double sigma);
std::vector<double> llr_vector(const std::vector<double>& observations, double sigma);

}  // namespace ira
