#include "ira/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "ira/channel.hpp"

namespace ira {

namespace {

// Variable node ids: 0..k-1 information, k..k+m-1 parity.
// Check j touches its information edges, parity j and parity j-1.
struct TannerView {
    int num_vars = 0;
    int num_checks = 0;
    std::vector<std::vector<int>> check_vars;  // distinct vars per check
    std::vector<std::vector<int>> var_checks;  // checks per var, with multiplicity
};

TannerView tanner_view(const IraCode& code) {
    TannerView view;
    view.num_vars = code.n();
    view.num_checks = code.m;
    view.check_vars.resize(code.m);
    view.var_checks.resize(view.num_vars);
    for (int j = 0; j < code.m; j++) {
        std::vector<int> vars;
        for (int e : code.check_edges[j]) {
            vars.push_back(code.edge_info[e]);
        }
        vars.push_back(code.k + j);
        if (j > 0) vars.push_back(code.k + j - 1);
        for (int v : vars) {
            view.var_checks[v].push_back(j);
        }
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        view.check_vars[j] = std::move(vars);
    }
    return view;
}

}  // namespace

DefectReport count_cycles4(const IraCode& code) {
    TannerView view = tanner_view(code);

    int min_rep = *std::min_element(code.rep_degree.begin(), code.rep_degree.end());
    auto is_min_info = [&](int v) {
        return v < code.k && code.rep_degree[v] == min_rep;
    };

    // Shared-check counts per variable pair, distinct checks.
    std::unordered_map<long long, int> shared;
    for (int j = 0; j < view.num_checks; j++) {
        const auto& vars = view.check_vars[j];
        for (size_t a = 0; a < vars.size(); a++) {
            for (size_t b = a + 1; b < vars.size(); b++) {
                shared[static_cast<long long>(vars[a]) * view.num_vars + vars[b]]++;
            }
        }
    }
    DefectReport report;
    for (auto [key, t] : shared) {
        if (t < 2) continue;
        long cycles = static_cast<long>(t) * (t - 1) / 2;
        report.cycle4_total += cycles;
        int u = static_cast<int>(key / view.num_vars);
        int v = static_cast<int>(key % view.num_vars);
        if (is_min_info(u) && is_min_info(v)) {
            report.cycle4_min_degree += cycles;
        }
    }
    return report;
}

DefectReport find_stopping_sets(const IraCode& code, int max_size) {
    if (max_size < 1 || max_size > 6) {
        throw std::invalid_argument("find_stopping_sets: max_size must be in 1..6");
    }
    TannerView view = tanner_view(code);

    // Distinct variable neighborhoods through shared checks, ascending.
    std::vector<std::vector<int>> var_adj(view.num_vars);
    for (int j = 0; j < view.num_checks; j++) {
        const auto& vars = view.check_vars[j];
        for (size_t a = 0; a < vars.size(); a++) {
            for (size_t b = 0; b < vars.size(); b++) {
                if (a != b) var_adj[vars[a]].push_back(vars[b]);
            }
        }
    }
    for (auto& nbrs : var_adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }

    std::vector<int> incidence(view.num_checks, 0);
    std::vector<int> members;
    std::vector<char> seen(view.num_vars, 0);
    int best = max_size + 1;

    auto is_stopping = [&]() {
        for (int v : members) {
            for (int j : view.var_checks[v]) {
                if (incidence[j] < 2) return false;
            }
        }
        return true;
    };

    // Connected subsets whose minimum vertex is the seed, each enumerated
    // once: a vertex enters `seen` when first offered as a candidate and is
    // never offered again within the seed's subtree.
    auto enumerate = [&](auto&& self, int seed, const std::vector<int>& cand) -> void {
        if (static_cast<int>(members.size()) < best && is_stopping()) {
            best = static_cast<int>(members.size());
        }
        if (static_cast<int>(members.size()) >= max_size) return;
        if (static_cast<int>(members.size()) + 1 >= best) return;
        for (size_t i = 0; i < cand.size(); i++) {
            int u = cand[i];
            std::vector<int> added;
            for (int w : var_adj[u]) {
                if (w > seed && !seen[w]) {
                    seen[w] = 1;
                    added.push_back(w);
                }
            }
            std::vector<int> next(cand.begin() + i + 1, cand.end());
            next.insert(next.end(), added.begin(), added.end());
            members.push_back(u);
            for (int j : view.var_checks[u]) incidence[j]++;
            self(self, seed, next);
            for (int j : view.var_checks[u]) incidence[j]--;
            members.pop_back();
            for (int w : added) seen[w] = 0;
            if (static_cast<int>(members.size()) + 1 >= best) return;
        }
    };

    for (int seed = 0; seed < view.num_vars && best > 1; seed++) {
        members.assign(1, seed);
        seen[seed] = 1;
        for (int j : view.var_checks[seed]) incidence[j]++;
        std::vector<int> cand;
        for (int w : var_adj[seed]) {
            if (w > seed) {
                seen[w] = 1;
                cand.push_back(w);
            }
        }
        enumerate(enumerate, seed, cand);
        for (int w : cand) seen[w] = 0;
        for (int j : view.var_checks[seed]) incidence[j]--;
        seen[seed] = 0;
        members.clear();
    }

    DefectReport report;
    report.searched_bound = max_size;
    if (best <= max_size) report.min_stopping_set_size = best;
    return report;
}

DefectScore defect_score(const DefectReport& report) {
    long ss = report.min_stopping_set_size ? *report.min_stopping_set_size
                                           : report.searched_bound + 1;
    return DefectScore{report.cycle4_min_degree, report.cycle4_total, -ss};
}

PsSearchResult search_ps(int n, const DitherSequence& small,
                         std::pair<int, int> p_range, std::pair<int, int> s_range,
                         const PsSearchOptions& opts) {
    if (p_range.first >= p_range.second || s_range.first >= s_range.second) {
        throw std::invalid_argument("search_ps: empty range");
    }
    RealizedDegrees rep = realize_degrees(builtin_profile(), opts.k, n);
    std::vector<int> checks = realize_check_degrees(n, opts.m);

    std::vector<std::pair<int, int>> candidates;
    if (opts.sample > 0) {
        RandomStream stream(opts.sample_seed);
        std::set<std::pair<int, int>> chosen;
        long p_span = p_range.second - p_range.first;
        long s_span = s_range.second - s_range.first;
        long attempts = 0;
        while (static_cast<long>(chosen.size()) < opts.sample &&
               attempts < opts.sample * 1000) {
            attempts++;
            int p = p_range.first + static_cast<int>(stream.next_u64() % p_span);
            int s = s_range.first + static_cast<int>(stream.next_u64() % s_span);
            if (std::gcd(p, n) != 1) continue;
            chosen.emplace(p, s);
        }
        candidates.assign(chosen.begin(), chosen.end());
    } else {
        for (int p = p_range.first; p < p_range.second; p++) {
            if (std::gcd(p, n) != 1) continue;
            for (int s = s_range.first; s < s_range.second; s++) {
                candidates.emplace_back(p, s);
            }
        }
    }
    if (candidates.empty()) {
        throw std::invalid_argument("search_ps: no coprime candidates in range");
    }

    PsSearchResult result;
    bool have_best = false;
    DefectScore best_score{};
    for (auto [p, s] : candidates) {
        InterleaverSpec spec{n, p, s, small, ShiftMode::SkipFirst};
        Permutation perm = build_gruenbaum_interleaver(spec);
        IraCode code = build_code(rep, perm, checks, {});
        DefectReport report = count_cycles4(code);
        DefectReport stopping = find_stopping_sets(code, opts.stopping_bound);
        report.min_stopping_set_size = stopping.min_stopping_set_size;
        report.searched_bound = stopping.searched_bound;
        DefectScore score = defect_score(report);
        result.scored.push_back(PsCandidate{p, s, report});
        if (!have_best || score < best_score) {
            have_best = true;
            best_score = score;
            result.best = result.scored.back();
        }
        result.candidates_scored++;
    }
    return result;
}

}  // namespace ira
