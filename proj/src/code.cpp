#include "ira/code.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ira {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

// Merge duplicate degrees, sort ascending, validate.
std::vector<std::pair<int, double>> normalized_terms(const DegreeProfile& profile) {
    std::map<int, double> merged;
    double total = 0.0;
    for (auto [degree, fraction] : profile.terms) {
        require(degree >= 2, "degree profile: degrees must be >= 2");
        require(fraction > 0.0 && fraction <= 1.0, "degree profile: bad fraction");
        merged[degree] += fraction;
        total += fraction;
    }
    require(!merged.empty(), "degree profile: empty");
    require(std::abs(total - 1.0) <= 1e-9, "degree profile: fractions must sum to 1");
    return {merged.begin(), merged.end()};
}

struct Realization {
    double edge_l1 = std::numeric_limits<double>::infinity();
    double node_l1 = 0.0;
    std::vector<int> counts;

    // Smaller edge L1 wins, then smaller node L1, then the larger count at
    // the lowest differing degree.
    bool better_than(const Realization& other) const {
        if (edge_l1 != other.edge_l1) return edge_l1 < other.edge_l1;
        if (node_l1 != other.node_l1) return node_l1 < other.node_l1;
        return counts > other.counts;
    }
};

}  // namespace

DegreeProfile builtin_profile() {
    return DegreeProfile{{{3, 0.2}, {7, 0.55}, {11, 0.1}, {29, 0.1}, {31, 0.05}}};
}

int RealizedDegrees::edge_count() const {
    int total = 0;
    for (int d : rep_degree) total += d;
    return total;
}

RealizedDegrees realize_degrees(const DegreeProfile& profile, int k, int edge_count) {
    require(k > 0 && edge_count > 0, "realize_degrees: bad sizes");
    auto terms = normalized_terms(profile);
    const int num_degrees = static_cast<int>(terms.size());

    Realization best;
    std::vector<int> counts(num_degrees, 0);

    // Score a complete assignment.
    auto consider = [&](const std::vector<int>& c) {
        double edge_l1 = 0.0, node_l1 = 0.0;
        for (int i = 0; i < num_degrees; i++) {
            auto [degree, fraction] = terms[i];
            edge_l1 += std::abs(static_cast<double>(degree) * c[i] / edge_count - fraction);
            node_l1 += std::abs(c[i] - fraction * edge_count / degree);
        }
        Realization cand{edge_l1, node_l1, c};
        if (cand.better_than(best)) best = std::move(cand);
    };

    // Close the two lowest degrees by a linear solve; enumerate the rest.
    auto close_pair = [&](int nodes_left, int edges_left) {
        if (nodes_left < 0 || edges_left < 0) return;
        if (num_degrees == 1) {
            int d = terms[0].first;
            if (edges_left == static_cast<long long>(d) * nodes_left) {
                counts[0] = nodes_left;
                consider(counts);
            }
            return;
        }
        int d0 = terms[0].first, d1 = terms[1].first;
        long long num = edges_left - static_cast<long long>(d0) * nodes_left;
        if (num < 0 || num % (d1 - d0) != 0) return;
        long long n1 = num / (d1 - d0);
        long long n0 = nodes_left - n1;
        if (n0 < 0 || n1 < 0) return;
        counts[0] = static_cast<int>(n0);
        counts[1] = static_cast<int>(n1);
        consider(counts);
    };

    auto enumerate = [&](auto&& self, int index, int nodes_left, int edges_left) -> void {
        if (index < 2) {
            close_pair(nodes_left, edges_left);
            return;
        }
        int d = terms[index].first;
        int max_count = std::min(nodes_left, edges_left / d);
        for (int c = 0; c <= max_count; c++) {
            counts[index] = c;
            // Remaining mass must fit between the two lowest degrees.
            long long rem_edges = edges_left - static_cast<long long>(c) * d;
            self(self, index - 1, nodes_left - c, static_cast<int>(rem_edges));
        }
        counts[index] = 0;
    };
    enumerate(enumerate, num_degrees - 1, k, edge_count);

    if (best.counts.empty()) {
        std::ostringstream msg;
        msg << "realize_degrees: no integer assignment for k=" << k
            << " edges=" << edge_count << " over degrees {";
        for (int i = 0; i < num_degrees; i++) {
            msg << (i ? "," : "") << terms[i].first;
        }
        msg << "}";
        throw std::runtime_error(msg.str());
    }

    std::vector<int> rep;
    rep.reserve(k);
    for (int i = 0; i < num_degrees; i++) {
        rep.insert(rep.end(), best.counts[i], terms[i].first);
    }
    return RealizedDegrees{std::move(rep)};
}

std::vector<int> realize_check_degrees(int edge_count, int m) {
    require(m > 0, "realize_check_degrees: m must be positive");
    require(edge_count >= m, "realize_check_degrees: need at least one edge per check");
    int lo = edge_count / m;
    int hi_count = edge_count - lo * m;  // checks of degree lo+1
    if (hi_count == 0) {
        return std::vector<int>(m, lo);
    }
    // Repeat the (hi, lo, lo, ...) block pattern along the chain.
    int block = m / hi_count;
    std::vector<int> degrees(m, lo);
    for (int j = 0, placed = 0; placed < hi_count; j += block, placed++) {
        degrees[j] = lo + 1;
    }
    int sum = 0;
    for (int d : degrees) sum += d;
    require(sum == edge_count, "realize_check_degrees: degree total mismatch");
    return degrees;
}

bool IraCode::is_pinned(int info_pos) const {
    for (auto [pos, bit] : pinned) {
        if (pos == info_pos) return true;
    }
    return false;
}

IraCode build_code(const RealizedDegrees& rep, const Permutation& perm,
                   const std::vector<int>& check_degrees,
                   const std::vector<std::pair<int, int>>& pinned) {
    IraCode code;
    code.k = rep.node_count();
    code.m = static_cast<int>(check_degrees.size());
    code.rep_degree = rep.rep_degree;
    code.check_degree = check_degrees;
    code.perm = perm;
    code.pinned = pinned;

    const int edges = perm.length();
    require(rep.edge_count() == edges, "build_code: repetition degrees do not sum to the permutation length");
    int check_sum = 0;
    for (int d : check_degrees) {
        require(d >= 1, "build_code: check degree must be >= 1");
        check_sum += d;
    }
    require(check_sum == edges, "build_code: check degrees do not sum to the permutation length");
    require(is_bijection(perm.map), "build_code: permutation is not a bijection");

    code.var_offset.resize(code.k + 1, 0);
    for (int i = 0; i < code.k; i++) {
        code.var_offset[i + 1] = code.var_offset[i] + code.rep_degree[i];
    }
    code.edge_info.resize(edges);
    for (int i = 0; i < code.k; i++) {
        for (int e = code.var_offset[i]; e < code.var_offset[i + 1]; e++) {
            code.edge_info[e] = i;
        }
    }

    code.check_offset.resize(code.m + 1, 0);
    for (int j = 0; j < code.m; j++) {
        code.check_offset[j + 1] = code.check_offset[j] + code.check_degree[j];
    }
    std::vector<int> slot_check(edges);
    for (int j = 0; j < code.m; j++) {
        for (int t = code.check_offset[j]; t < code.check_offset[j + 1]; t++) {
            slot_check[t] = j;
        }
    }
    code.check_edges.assign(code.m, {});
    for (int j = 0; j < code.m; j++) {
        code.check_edges[j].resize(code.check_degree[j]);
    }
    for (int e = 0; e < edges; e++) {
        int slot = perm.map[e];
        int j = slot_check[slot];
        code.check_edges[j][slot - code.check_offset[j]] = e;
    }

    std::vector<char> seen(code.k, 0);
    for (auto [pos, bit] : pinned) {
        require(pos >= 0 && pos < code.k, "build_code: pin position out of range");
        require(bit == 0 || bit == 1, "build_code: pin bit must be 0 or 1");
        require(!seen[pos], "build_code: duplicate pin position");
        seen[pos] = 1;
    }
    return code;
}

std::vector<std::pair<int, int>> default_pins() {
    return {{3, 1}, {9, 1}, {11, 1}, {18, 1}, {19, 1}, {26, 1}, {27, 1}, {74, 1}};
}

IraCode build_reference_code() { return build_reference_code(default_pins()); }

IraCode build_reference_code(const std::vector<std::pair<int, int>>& pins) {
    RealizedDegrees rep = realize_degrees(builtin_profile(), 192, 1344);
    std::vector<int> checks = realize_check_degrees(1344, 576);
    Permutation perm = build_gruenbaum_interleaver(reference_spec());
    return build_code(rep, perm, checks, pins);
}

std::vector<std::uint8_t> insert_pins(const IraCode& code,
                                      const std::vector<std::uint8_t>& payload) {
    require(static_cast<int>(payload.size()) == code.payload_bits(),
            "insert_pins: wrong payload length");
    std::vector<std::uint8_t> info(code.k, 0);
    std::vector<char> fixed(code.k, 0);
    for (auto [pos, bit] : code.pinned) {
        info[pos] = static_cast<std::uint8_t>(bit);
        fixed[pos] = 1;
    }
    int next = 0;
    for (int i = 0; i < code.k; i++) {
        if (!fixed[i]) info[i] = payload[next++];
    }
    return info;
}

std::vector<std::uint8_t> extract_payload(const IraCode& code,
                                          const std::vector<std::uint8_t>& info) {
    require(static_cast<int>(info.size()) == code.k, "extract_payload: wrong info length");
    std::vector<char> fixed(code.k, 0);
    for (auto [pos, bit] : code.pinned) fixed[pos] = 1;
    std::vector<std::uint8_t> payload;
    payload.reserve(code.payload_bits());
    for (int i = 0; i < code.k; i++) {
        if (!fixed[i]) payload.push_back(info[i]);
    }
    return payload;
}

std::vector<std::uint8_t> accumulate(const std::vector<std::uint8_t>& bits) {
    std::vector<std::uint8_t> out(bits.size());
    std::uint8_t state = 0;
    for (size_t i = 0; i < bits.size(); i++) {
        state = static_cast<std::uint8_t>(state ^ (bits[i] & 1));
        out[i] = state;
    }
    return out;
}

Codeword encode(const IraCode& code, const std::vector<std::uint8_t>& payload) {
    std::vector<std::uint8_t> info = insert_pins(code, payload);
    std::vector<std::uint8_t> combined(code.m, 0);
    for (int j = 0; j < code.m; j++) {
        std::uint8_t x = 0;
        for (int e : code.check_edges[j]) {
            x ^= info[code.edge_info[e]] & 1;
        }
        combined[j] = x;
    }
    return Codeword{std::move(info), accumulate(combined)};
}

bool check_codeword(const IraCode& code, const Codeword& word) {
    require(static_cast<int>(word.systematic.size()) == code.k &&
                static_cast<int>(word.parity.size()) == code.m,
            "check_codeword: dimension mismatch");
    for (auto [pos, bit] : code.pinned) {
        if ((word.systematic[pos] & 1) != bit) return false;
    }
    std::uint8_t prev = 0;
    for (int j = 0; j < code.m; j++) {
        std::uint8_t x = 0;
        for (int e : code.check_edges[j]) {
            x ^= word.systematic[code.edge_info[e]] & 1;
        }
        if (((x ^ (word.parity[j] & 1) ^ prev) & 1) != 0) return false;
        prev = word.parity[j] & 1;
    }
    return true;
}

std::vector<std::uint8_t> to_channel_bits(const Codeword& word) {
    std::vector<std::uint8_t> bits;
    bits.reserve(word.systematic.size() + word.parity.size());
    bits.insert(bits.end(), word.systematic.begin(), word.systematic.end());
    bits.insert(bits.end(), word.parity.begin(), word.parity.end());
    return bits;
}

void write_code(const IraCode& code, std::ostream& out) {
    out << "k " << code.k << "\n";
    out << "m " << code.m << "\n";
    out << "edges " << code.edge_count() << "\n";
    out << "rep";
    for (int d : code.rep_degree) out << " " << d;
    out << "\ncheck";
    for (int d : code.check_degree) out << " " << d;
    out << "\npinned";
    if (code.pinned.empty()) {
        out << " none";
    } else {
        for (auto [pos, bit] : code.pinned) out << " " << pos << ":" << bit;
    }
    out << "\nperm";
    for (int v : code.perm.map) out << " " << v;
    out << "\n";
}

IraCode read_code(std::istream& in) {
    auto expect_key = [&](const char* key) {
        std::string word;
        if (!(in >> word) || word != key) {
            throw std::runtime_error(std::string("code file: expected '") + key + "'");
        }
    };
    int k = 0, m = 0, edges = 0;
    expect_key("k");
    in >> k;
    expect_key("m");
    in >> m;
    expect_key("edges");
    in >> edges;
    if (!in || k <= 0 || m <= 0 || edges <= 0) {
        throw std::runtime_error("code file: bad header");
    }
    expect_key("rep");
    RealizedDegrees rep;
    rep.rep_degree.resize(k);
    for (int& d : rep.rep_degree) in >> d;
    expect_key("check");
    std::vector<int> check(m);
    for (int& d : check) in >> d;
    expect_key("pinned");
    std::vector<std::pair<int, int>> pins;
    std::string tok;
    in >> tok;
    if (tok != "none") {
        while (true) {
            auto colon = tok.find(':');
            if (colon == std::string::npos) {
                throw std::runtime_error("code file: bad pin token");
            }
            pins.emplace_back(std::stoi(tok.substr(0, colon)),
                              std::stoi(tok.substr(colon + 1)));
            if (!(in >> tok)) throw std::runtime_error("code file: truncated pins");
            if (tok == "perm") break;
        }
    } else {
        in >> tok;
    }
    if (tok != "perm") throw std::runtime_error("code file: expected 'perm'");
    Permutation perm;
    perm.map.resize(edges);
    for (int& v : perm.map) in >> v;
    if (!in) throw std::runtime_error("code file: truncated");
    return build_code(rep, perm, check, pins);
}

}  // namespace ira
