#pragma once

#include <cstdint>
#include <vector>

#include "ira/code.hpp"

namespace ira {

// LLR convention throughout: L = ln(P(bit=0)/P(bit=1)), natural-log units.
// Positive favors bit 0; |L| >= kLlrClamp is treated as certainty.
using Llr = double;

inline constexpr double kLlrClamp = 25.0;

// Check-node combining rule 2*atanh(tanh(a/2)*tanh(b/2)), computed in the
// overflow-free form. Inputs at or beyond the clamp act as exact certainty.
double boxplus(double a, double b);

// Min-sum approximation of the above.
double boxplus_minsum(double a, double b);

enum class Scheduling { Flooding, Turbo };

struct DecodeOptions {
    int max_iter = 72;
    bool early_stop = false;  // stop once hard decisions satisfy all checks
    bool min_sum = false;     // replace exact boxplus in check updates
    // Turbo only: consume variable messages refreshed at every trellis step,
    // so an updated outgoing message reaches the next check within the same
    // sweep. Clearing this refreshes them once per sweep instead.
    bool fresh_messages = true;
};

struct DecodeResult {
    std::vector<std::uint8_t> hard_bits;  // k decided information bits
    int iterations_used = 0;
    bool converged = false;          // all checks satisfied by hard decisions
    std::vector<double> posterior;   // k information-bit LLRs
};

// Belief propagation with flooding schedule over the full Tanner graph
// (information nodes, parity nodes, accumulator chain edges).
// channel_llrs: n = k + m values, systematic first. Pinned positions are
// overridden with clamped certainty of the pinned value.
DecodeResult decode_flooding(const IraCode& code,
                             const std::vector<double>& channel_llrs,
                             const DecodeOptions& opts = {});

// Sequential scheduling: each iteration runs one forward and one backward
// sweep over the two-state accumulator trellis, consuming the freshest state
// messages at every check; extrinsic information returns to the information
// nodes through the interleaver after each sweep.
DecodeResult decode_turbo(const IraCode& code,
                          const std::vector<double>& channel_llrs,
                          const DecodeOptions& opts = {});

DecodeResult decode(const IraCode& code, const std::vector<double>& channel_llrs,
                    Scheduling scheduling, const DecodeOptions& opts = {});

// Exact bitwise MAP posteriors by enumeration over all payload assignments.
// Requires k - |pinned| <= 16 (throws otherwise). Returns k LLRs.
std::vector<double> map_posteriors(const IraCode& code,
                                   const std::vector<double>& channel_llrs);

// Hard decisions of the exhaustive bitwise MAP; ties decide 0.
std::vector<std::uint8_t> brute_force_map(const IraCode& code,
                                          const std::vector<double>& channel_llrs);

// Maximum-likelihood codeword by enumeration (test oracle companion).
std::vector<std::uint8_t> brute_force_ml(const IraCode& code,
                                         const std::vector<double>& channel_llrs);

}  // namespace ira
