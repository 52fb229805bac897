#include "ira/interleaver.hpp"

#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ira {

namespace {

const int kGr25[25] = {7,  20, 12, 4,  9,  21, 0, 18, 11, 6,  16, 3, 19,
                       23, 10, 15, 1,  24, 17, 13, 22, 2,  8,  14, 5};

// Dither table of the reference 1344-length construction. Distinct from
// gr24 and from its inverse; both are accepted as small tables.
const int kRefDither24[24] = {0,  14, 9, 22, 18, 2,  15, 5,  10, 17, 4, 13,
                              7,  1,  21, 12, 16, 23, 6,  19, 11, 3,  8, 20};

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

DitherSequence gr25() {
    return DitherSequence{std::vector<int>(kGr25, kGr25 + 25)};
}

DitherSequence gr24() {
    std::vector<int> v;
    v.reserve(24);
    for (int x : kGr25) {
        if (x != 24) v.push_back(x);
    }
    return DitherSequence{std::move(v)};
}

DitherSequence reference_dither24() {
    return DitherSequence{std::vector<int>(kRefDither24, kRefDither24 + 24)};
}

InterleaverSpec reference_spec() {
    return InterleaverSpec{1344, 173, 1184, reference_dither24(), ShiftMode::SkipFirst};
}

int rp_index(int i, int p, int s, int n) {
    require(n > 0 && p > 0, "rp_index: n and p must be positive");
    require(std::gcd(p, n) == 1, "rp_index: p and n must be coprime");
    require(i >= 0 && i < n, "rp_index: index out of range");
    require(s >= 0 && s < n, "rp_index: offset out of range");
    return static_cast<int>((static_cast<long long>(p) * i + s) % n);
}

bool is_bijection(const std::vector<int>& values) {
    const int n = static_cast<int>(values.size());
    std::vector<int> count(n, 0);
    for (int v : values) {
        if (v < 0 || v >= n) return false;
        count[v]++;
    }
    for (int c : count) {
        if (c != 1) return false;
    }
    return true;
}

Permutation build_gruenbaum_interleaver(const InterleaverSpec& spec) {
    const int n = spec.n;
    const int group = spec.small.length();
    require(n > 0, "interleaver: n must be positive");
    require(group > 0 && n % group == 0, "interleaver: group length must divide n");
    require(is_bijection(spec.small.values), "interleaver: small table is not a bijection");
    require(std::gcd(spec.p, n) == 1, "interleaver: p and n must be coprime");
    require(spec.s >= 0 && spec.s < n, "interleaver: s out of range");

    std::vector<int> dst(n);
    // Stage 1+2: dither within each group, then the affine map.
    for (int i = 0; i < n; i++) {
        int j = i % group;
        long long ptr = (i - j) + spec.small.values[j];
        dst[i] = static_cast<int>((spec.s + ptr * spec.p) % n);
    }
    // Stage 3: shift pass across group heads.
    if (spec.shift != ShiftMode::None) {
        int j = (spec.shift == ShiftMode::Cyclic) ? n - group : -1;
        for (int i = 0; i < n; i += group) {
            if (j >= 0) std::swap(dst[j], dst[i]);
            j = i;
        }
    }
    return Permutation{std::move(dst)};
}

Permutation invert(const Permutation& perm) {
    if (!is_bijection(perm.map)) {
        throw std::invalid_argument("invert: input is not a bijection");
    }
    std::vector<int> inv(perm.map.size());
    for (int i = 0; i < perm.length(); i++) {
        inv[perm.map[i]] = i;
    }
    return Permutation{std::move(inv)};
}

int s_random_metric(const std::vector<int>& pi) {
    const int n = static_cast<int>(pi.size());
    if (n < 2) return 0;
    int best = 0x7fffffff;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            int d = (j - i) + std::abs(pi[i] - pi[j]);
            if (d < best) best = d;
        }
    }
    return best;
}

int s_random_metric(const DitherSequence& seq) { return s_random_metric(seq.values); }
int s_random_metric(const Permutation& perm) { return s_random_metric(perm.map); }

void write_permutation(const Permutation& perm, std::ostream& out) {
    out << perm.length() << "\n";
    for (int v : perm.map) {
        out << v << "\n";
    }
}

Permutation read_permutation(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n <= 0) {
        throw std::runtime_error("permutation file: bad length line");
    }
    std::vector<int> map(n);
    for (int i = 0; i < n; i++) {
        if (!(in >> map[i])) {
            throw std::runtime_error("permutation file: truncated");
        }
    }
    Permutation perm{std::move(map)};
    if (!is_bijection(perm.map)) {
        throw std::runtime_error("permutation file: not a bijection");
    }
    return perm;
}

}  // namespace ira
