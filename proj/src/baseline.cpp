#include "ira/baseline.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace ira {

namespace {

inline std::uint8_t parity_of(unsigned x) {
    return static_cast<std::uint8_t>(std::popcount(x) & 1);
}

}  // namespace

void ConvCodeSpec::validate() const {
    if (constraint_length < 2 || constraint_length > 16) {
        throw std::invalid_argument("conv spec: unsupported constraint length");
    }
    int top = 1 << (constraint_length - 1);
    for (size_t i = 0; i < generators.size(); i++) {
        int g = generators[i];
        if ((g & 1) == 0 || (g & top) == 0 || g >= (top << 1)) {
            throw std::invalid_argument("conv spec: generator needs constant and top taps");
        }
        for (size_t j = i + 1; j < generators.size(); j++) {
            if (generators[j] == g) {
                throw std::invalid_argument("conv spec: generators must be distinct");
            }
        }
    }
}

std::vector<std::uint8_t> conv_encode(const ConvCodeSpec& spec,
                                      const std::vector<std::uint8_t>& payload) {
    spec.validate();
    const int K = spec.constraint_length;
    const int steps = static_cast<int>(payload.size()) + spec.tail_bits;
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<size_t>(steps) * spec.generators.size());

    // Register holds the current bit at the top tap, oldest at bit 0.
    unsigned reg = 0;
    for (int i = 0; i < steps; i++) {
        unsigned bit = (i < static_cast<int>(payload.size())) ? (payload[i] & 1u) : 0u;
        reg = (reg >> 1) | (bit << (K - 1));
        for (int g : spec.generators) {
            out.push_back(parity_of(static_cast<unsigned>(g) & reg));
        }
    }
    return out;
}

std::vector<std::uint8_t> viterbi_decode(const ConvCodeSpec& spec,
                                         const std::vector<double>& llrs) {
    spec.validate();
    const int K = spec.constraint_length;
    const int branches = static_cast<int>(spec.generators.size());
    if (llrs.size() % branches != 0) {
        throw std::invalid_argument("viterbi_decode: LLR count not a multiple of the rate");
    }
    const int steps = static_cast<int>(llrs.size()) / branches;
    const int payload_len = steps - spec.tail_bits;
    if (payload_len < 0) {
        throw std::invalid_argument("viterbi_decode: frame shorter than the tail");
    }
    const int num_states = spec.states();
    const int state_mask = num_states - 1;
    const double ninf = -std::numeric_limits<double>::infinity();

    // Output bits per (state, input) branch, precomputed.
    std::vector<std::uint8_t> branch_bits(static_cast<size_t>(num_states) * 2 * branches);
    for (int s = 0; s < num_states; s++) {
        for (unsigned u = 0; u < 2; u++) {
            unsigned reg = static_cast<unsigned>(s) | (u << (K - 1));
            for (int g = 0; g < branches; g++) {
                branch_bits[(static_cast<size_t>(s) * 2 + u) * branches + g] =
                    parity_of(static_cast<unsigned>(spec.generators[g]) & reg);
            }
        }
    }

    std::vector<double> metric(num_states, ninf), next_metric(num_states, ninf);
    metric[0] = 0.0;  // encoder starts in the zero state
    // Traceback stores the dropped register bit of the predecessor state.
    std::vector<std::uint8_t> trace(static_cast<size_t>(steps) * num_states);

    for (int i = 0; i < steps; i++) {
        const double* step_llr = &llrs[static_cast<size_t>(i) * branches];
        const bool tail = i >= payload_len;
        std::fill(next_metric.begin(), next_metric.end(), ninf);
        std::uint8_t* step_trace = &trace[static_cast<size_t>(i) * num_states];
        for (int s = 0; s < num_states; s++) {
            if (metric[s] == ninf) continue;
            const unsigned max_u = tail ? 0u : 1u;
            for (unsigned u = 0; u <= max_u; u++) {
                const std::uint8_t* bits =
                    &branch_bits[(static_cast<size_t>(s) * 2 + u) * branches];
                double bm = 0.0;
                for (int g = 0; g < branches; g++) {
                    bm += bits[g] ? -0.5 * step_llr[g] : 0.5 * step_llr[g];
                }
                int next = ((s >> 1) | static_cast<int>(u << (K - 2))) & state_mask;
                double cand = metric[s] + bm;
                if (cand > next_metric[next]) {
                    next_metric[next] = cand;
                    step_trace[next] = static_cast<std::uint8_t>(s & 1);
                }
            }
        }
        metric.swap(next_metric);
    }

    // Terminated: trace back from the zero state.
    std::vector<std::uint8_t> decoded(steps);
    int state = 0;
    for (int i = steps - 1; i >= 0; i--) {
        decoded[i] = static_cast<std::uint8_t>(state >> (K - 2));
        state = (((state << 1) & state_mask) |
                 trace[static_cast<size_t>(i) * num_states + state]);
    }
    decoded.resize(payload_len);
    return decoded;
}

}  // namespace ira
