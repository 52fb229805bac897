#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "ira/interleaver.hpp"

namespace ira {

// Repetition degree distribution: (degree, fraction of edges) terms.
// Fractions sum to 1; duplicate degrees are merged on construction.
struct DegreeProfile {
    std::vector<std::pair<int, double>> terms;
};

// The built-in profile: degrees {3,7,11,29,31} with edge fractions
// {0.2, 0.55, 0.1, 0.1, 0.05}.
DegreeProfile builtin_profile();

// Per-information-node repetition degrees, ascending.
struct RealizedDegrees {
    std::vector<int> rep_degree;

    int node_count() const { return static_cast<int>(rep_degree.size()); }
    int edge_count() const;
};

// Integer realization of a degree profile: counts n_d with sum(n_d) = k and
// sum(d*n_d) = edge_count, minimizing the L1 distance between realized edge
// fractions d*n_d/E and the profile fractions. Ties prefer counts closer to
// the profile's implied node counts, then larger counts at lower degrees.
// Throws std::runtime_error when no integer assignment exists.
RealizedDegrees realize_degrees(const DegreeProfile& profile, int k, int edge_count);

// Combiner fan-in per parity bit: degrees from {floor(E/m), ceil(E/m)}
// summing to E, arranged by repeating the (hi, lo, lo, ...) block pattern
// along the accumulator chain.
std::vector<int> realize_check_degrees(int edge_count, int m);

struct Codeword {
    std::vector<std::uint8_t> systematic;
    std::vector<std::uint8_t> parity;
};

// Realized Tanner graph of an IRA code. Edge e of the repetition stage
// (info nodes ascending, repeat-count consecutive) feeds combiner slot
// perm(e); check j consumes the next check_degree[j] slots in chain order.
struct IraCode {
    int k = 0;                      // information length
    int m = 0;                      // parity length
    std::vector<int> rep_degree;    // size k
    std::vector<int> check_degree;  // size m
    Permutation perm;               // length = total edges
    std::vector<std::pair<int, int>> pinned;  // (info position, bit)

    // Derived wiring, filled by build_code().
    std::vector<int> edge_info;     // edge -> info node
    std::vector<int> var_offset;    // info node -> first edge index
    std::vector<int> check_offset;  // check -> first combiner slot
    std::vector<std::vector<int>> check_edges;  // check -> edge ids, slot order

    int n() const { return k + m; }
    int edge_count() const { return perm.length(); }
    int payload_bits() const { return k - static_cast<int>(pinned.size()); }
    bool is_pinned(int info_pos) const;
};

// Wires the Tanner graph. Throws std::runtime_error when the permutation
// length does not match the degree totals, or on invalid pins.
IraCode build_code(const RealizedDegrees& rep, const Permutation& perm,
                   const std::vector<int>& check_degrees,
                   const std::vector<std::pair<int, int>>& pinned);

// Pin positions fixed to 1 in the reference code.
std::vector<std::pair<int, int>> default_pins();

// The reference rate-1/4 instance: k=192, m=576, builtin profile realized
// over 1344 edges, reference interleaver, default pins.
IraCode build_reference_code();
IraCode build_reference_code(const std::vector<std::pair<int, int>>& pins);

// Insert pinned bits into a payload of k - |pinned| bits.
std::vector<std::uint8_t> insert_pins(const IraCode& code,
                                      const std::vector<std::uint8_t>& payload);

// Extract the payload positions from a full k-bit information vector.
std::vector<std::uint8_t> extract_payload(const IraCode& code,
                                          const std::vector<std::uint8_t>& info);

// y_i = x_i XOR y_{i-1}, y_{-1} = 0.
std::vector<std::uint8_t> accumulate(const std::vector<std::uint8_t>& bits);

// Repeat, interleave, combine, accumulate. payload has k - |pinned| bits.
Codeword encode(const IraCode& code, const std::vector<std::uint8_t>& payload);

// True iff every parity constraint holds.
bool check_codeword(const IraCode& code, const Codeword& word);

// Codeword laid out for the channel: systematic bits then parity bits.
std::vector<std::uint8_t> to_channel_bits(const Codeword& word);

// Text format with k/m/edges/rep/check/pinned/perm lines.
void write_code(const IraCode& code, std::ostream& out);
IraCode read_code(std::istream& in);

}  // namespace ira
