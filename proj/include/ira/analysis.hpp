#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "ira/code.hpp"

namespace ira {

struct DefectReport {
    long cycle4_total = 0;
    // 4-cycles whose two variable nodes are both information nodes of the
    // minimal repetition degree present in the code.
    long cycle4_min_degree = 0;
    std::optional<int> min_stopping_set_size;  // empty: none found below bound
    int searched_bound = 0;
};

// Counts unordered variable pairs sharing >= 2 distinct checks in the full
// Tanner graph (information + parity variables, accumulator edges included):
// a pair sharing t checks contributes t*(t-1)/2.
DefectReport count_cycles4(const IraCode& code);

// Exhaustive enumeration of variable subsets up to max_size (guarded at 6).
// A stopping set is a nonempty subset S whose every adjacent check has >= 2
// edge incidences in S. The smallest stopping set is connected through
// shared checks, so the enumeration walks connected subsets only.
DefectReport find_stopping_sets(const IraCode& code, int max_size);

// Lexicographic defect score, smaller is better:
// (cycle4_min_degree, cycle4_total, -min_stopping_set_size), with
// "none found below bound" scored as -(bound+1).
using DefectScore = std::tuple<long, long, long>;
DefectScore defect_score(const DefectReport& report);

struct PsCandidate {
    int p = 0;
    int s = 0;
    DefectReport report;
};

struct PsSearchOptions {
    int k = 192;
    int m = 576;
    int stopping_bound = 4;
    long sample = 0;             // 0: exhaustive over the ranges
    std::uint64_t sample_seed = 1;
};

struct PsSearchResult {
    PsCandidate best;
    long candidates_scored = 0;
    std::vector<PsCandidate> scored;  // all evaluated candidates
};

// Scores every coprime (p, s) candidate in the ranges (or a seeded random
// sample of them) by building the full interleaver and code, and returns the
// lexicographic minimum; ties break on smaller p, then smaller s. Ranges are
// half-open [lo, hi). Pins are not applied to candidate codes.
PsSearchResult search_ps(int n, const DitherSequence& small,
                         std::pair<int, int> p_range, std::pair<int, int> s_range,
                         const PsSearchOptions& opts = {});

}  // namespace ira
