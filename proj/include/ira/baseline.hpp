#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ira {

// K=9 rate-1/4 convolutional code with zero tail. Generators are 9-bit
// polynomials in octal; the leading bit taps the current input bit.
// Defaults are a published maximum-free-distance set.
struct ConvCodeSpec {
    int constraint_length = 9;
    std::array<int, 4> generators = {0463, 0535, 0733, 0745};
    int tail_bits = 8;

    int states() const { return 1 << (constraint_length - 1); }
    // Throws std::invalid_argument when generators repeat or miss the
    // constant/top taps.
    void validate() const;
};

// Shift-register convolution of payload followed by tail_bits zeros;
// rate_inverse output bits per input bit in generator order.
std::vector<std::uint8_t> conv_encode(const ConvCodeSpec& spec,
                                      const std::vector<std::uint8_t>& payload);

// Maximum-likelihood sequence over the 2^(K-1)-state trellis, terminated in
// the zero state. Path metric is correlation with the LLRs. Returns the
// payload (tail dropped).
std::vector<std::uint8_t> viterbi_decode(const ConvCodeSpec& spec,
                                         const std::vector<double>& llrs);

}  // namespace ira
