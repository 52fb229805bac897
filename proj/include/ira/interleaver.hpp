#pragma once

#include <iosfwd>
#include <vector>

namespace ira {

// Small seed permutation used to dither a relative-prime interleaver.
// values is a bijection on {0..L-1}, L = values.size().
struct DitherSequence {
    std::vector<int> values;

    int length() const { return static_cast<int>(values.size()); }
};

// Realized permutation on {0..n-1}. map[i] is the interleaved position of i.
struct Permutation {
    std::vector<int> map;

    int length() const { return static_cast<int>(map.size()); }
    int operator()(int i) const { return map[i]; }
};

// How the group-head shift pass at the end of the dithered construction is run.
//   SkipFirst: walk group heads 0, L, 2L, ... swapping each with the previous
//              head, skipping the leading swap that has no predecessor.
//   Cyclic:    same walk, but the leading swap exchanges head 0 with the last
//              group head.
//   None:      shift pass disabled.
enum class ShiftMode { SkipFirst, Cyclic, None };

struct InterleaverSpec {
    int n = 0;  // total length
    int p = 0;  // multiplier, coprime with n
    int s = 0;  // offset, 0 <= s < n
    DitherSequence small;
    ShiftMode shift = ShiftMode::SkipFirst;
};

// The 25-value dither sequence read off the Gruenbaum graph.
DitherSequence gr25();

// gr25 with the entry 24 removed; a bijection on {0..23}.
DitherSequence gr24();

// The 24-value dither table used by the reference 1344-length construction.
DitherSequence reference_dither24();

// Spec of the reference interleaver: n=1344, p=173, s=1184, reference table,
// skip-first shift pass.
InterleaverSpec reference_spec();

// (p*i + s) mod n. Throws std::invalid_argument unless gcd(p,n)=1 and
// 0 <= i < n.
int rp_index(int i, int p, int s, int n);

// Dithered relative-prime interleaver: per-group dither by spec.small, then
// the affine map, then the group-head shift pass. Throws if the group length
// does not divide n or the spec is otherwise invalid.
Permutation build_gruenbaum_interleaver(const InterleaverSpec& spec);

// Counting bijection check over {0..size-1}.
bool is_bijection(const std::vector<int>& values);

// Inverse permutation; invert(p) composed with p is the identity.
// Throws std::invalid_argument if the input is not a bijection.
Permutation invert(const Permutation& perm);

// Exact brute-force minimum over i != j of |i-j| + |pi(i)-pi(j)|.
int s_random_metric(const std::vector<int>& pi);
int s_random_metric(const DitherSequence& seq);
int s_random_metric(const Permutation& perm);

// Text format: first line n, then one index per line.
void write_permutation(const Permutation& perm, std::ostream& out);
Permutation read_permutation(std::istream& in);

}  // namespace ira
