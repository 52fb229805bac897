#include "ira/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ira {

namespace {

inline int sign_of(double x) { return x < 0.0 ? -1 : 1; }

inline double clamp_llr(double x) {
    return std::clamp(x, -kLlrClamp, kLlrClamp);
}

// Hard decision: L > 0 -> 0, L < 0 -> 1, tie -> 0.
inline std::uint8_t hard_bit(double llr) { return llr < 0.0 ? 1 : 0; }

struct Ports {
    // One port per (check, neighbor) incidence: the information edges first,
    // then parity j and parity j-1 per check.
    std::vector<int> var;           // port -> variable (0..k-1 info, k+j parity)
    std::vector<int> check_begin;   // check -> first port
    int count = 0;
};

Ports build_ports(const IraCode& code) {
    Ports ports;
    ports.check_begin.resize(code.m + 1, 0);
    for (int j = 0; j < code.m; j++) {
        int degree = code.check_degree[j] + (j > 0 ? 2 : 1);
        ports.check_begin[j + 1] = ports.check_begin[j] + degree;
    }
    ports.count = ports.check_begin[code.m];
    ports.var.resize(ports.count);
    for (int j = 0; j < code.m; j++) {
        int at = ports.check_begin[j];
        for (int e : code.check_edges[j]) {
            ports.var[at++] = code.edge_info[e];
        }
        ports.var[at++] = code.k + j;
        if (j > 0) ports.var[at++] = code.k + j - 1;
    }
    return ports;
}

bool checks_satisfied(const IraCode& code, const std::vector<std::uint8_t>& hard) {
    std::uint8_t prev = 0;
    for (int j = 0; j < code.m; j++) {
        std::uint8_t x = 0;
        for (int e : code.check_edges[j]) {
            x ^= hard[code.edge_info[e]];
        }
        if ((x ^ hard[code.k + j] ^ prev) != 0) return false;
        prev = hard[code.k + j];
    }
    return true;
}

// Channel LLRs clamped, pinned positions overridden with certainty.
std::vector<double> conditioned_input(const IraCode& code,
                                      const std::vector<double>& channel_llrs) {
    if (static_cast<int>(channel_llrs.size()) != code.n()) {
        throw std::invalid_argument("decode: channel LLR length must equal k + m");
    }
    std::vector<double> llr(channel_llrs.size());
    for (size_t i = 0; i < channel_llrs.size(); i++) {
        llr[i] = clamp_llr(channel_llrs[i]);
    }
    for (auto [pos, bit] : code.pinned) {
        llr[pos] = bit ? -kLlrClamp : kLlrClamp;
    }
    return llr;
}

std::vector<char> frozen_mask(const IraCode& code) {
    std::vector<char> frozen(code.n(), 0);
    for (auto [pos, bit] : code.pinned) frozen[pos] = 1;
    return frozen;
}

DecodeResult finish(const IraCode& code, const std::vector<double>& totals,
                    int iterations) {
    DecodeResult result;
    result.iterations_used = iterations;
    std::vector<std::uint8_t> hard(code.n());
    for (int v = 0; v < code.n(); v++) {
        hard[v] = hard_bit(totals[v]);
    }
    result.converged = checks_satisfied(code, hard);
    result.hard_bits.assign(hard.begin(), hard.begin() + code.k);
    result.posterior.assign(totals.begin(), totals.begin() + code.k);
    return result;
}

}  // namespace

double boxplus(double a, double b) {
    // Saturated inputs act as exact certainty: a known bit passes the other
    // operand through, with its sign.
    if (std::abs(a) >= kLlrClamp) {
        return sign_of(a) > 0 ? b : -b;
    }
    if (std::abs(b) >= kLlrClamp) {
        return sign_of(b) > 0 ? a : -a;
    }
    double mag = std::min(std::abs(a), std::abs(b));
    double out = (sign_of(a) * sign_of(b)) * mag;
    return out + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

double boxplus_minsum(double a, double b) {
    return (sign_of(a) * sign_of(b)) * std::min(std::abs(a), std::abs(b));
}

DecodeResult decode_flooding(const IraCode& code,
                             const std::vector<double>& channel_llrs,
                             const DecodeOptions& opts) {
    const std::vector<double> llr = conditioned_input(code, channel_llrs);
    const std::vector<char> frozen = frozen_mask(code);
    const Ports ports = build_ports(code);
    auto combine = opts.min_sum ? boxplus_minsum : boxplus;

    std::vector<double> v2c(ports.count), c2v(ports.count, 0.0);
    for (int t = 0; t < ports.count; t++) {
        v2c[t] = llr[ports.var[t]];
    }

    std::vector<double> totals(code.n());
    std::vector<double> prefix, suffix;
    int iterations = 0;
    for (int iter = 0; iter < opts.max_iter; iter++) {
        iterations = iter + 1;
        // Check update: each port gets the boxplus of the other inputs.
        for (int j = 0; j < code.m; j++) {
            int begin = ports.check_begin[j], end = ports.check_begin[j + 1];
            int degree = end - begin;
            prefix.assign(degree + 1, 0.0);
            suffix.assign(degree + 1, 0.0);
            prefix[0] = kLlrClamp;
            suffix[degree] = kLlrClamp;
            for (int t = 0; t < degree; t++) {
                prefix[t + 1] = combine(prefix[t], v2c[begin + t]);
            }
            for (int t = degree - 1; t >= 0; t--) {
                suffix[t] = combine(suffix[t + 1], v2c[begin + t]);
            }
            for (int t = 0; t < degree; t++) {
                c2v[begin + t] = combine(prefix[t], suffix[t + 1]);
            }
        }
        // Variable update.
        for (int v = 0; v < code.n(); v++) {
            totals[v] = llr[v];
        }
        for (int t = 0; t < ports.count; t++) {
            totals[ports.var[t]] += c2v[t];
        }
        for (int v = 0; v < code.n(); v++) {
            if (frozen[v]) totals[v] = llr[v];
        }
        for (int t = 0; t < ports.count; t++) {
            int v = ports.var[t];
            v2c[t] = frozen[v] ? llr[v] : totals[v] - c2v[t];
        }
        if (opts.early_stop) {
            std::vector<std::uint8_t> hard(code.n());
            for (int v = 0; v < code.n(); v++) hard[v] = hard_bit(totals[v]);
            if (checks_satisfied(code, hard)) break;
        }
    }
    if (iterations == 0) {
        totals = llr;  // max_iter = 0: channel decisions only
    }
    return finish(code, totals, iterations);
}

DecodeResult decode_turbo(const IraCode& code,
                          const std::vector<double>& channel_llrs,
                          const DecodeOptions& opts) {
    const std::vector<double> llr = conditioned_input(code, channel_llrs);
    const std::vector<char> frozen = frozen_mask(code);
    auto combine = opts.min_sum ? boxplus_minsum : boxplus;
    const int edges = code.edge_count();
    const int m = code.m;

    std::vector<double> v2c(edges, 0.0), c2v(edges, 0.0);
    std::vector<double> fwd(m, 0.0);   // state belief after step j, incl. parity j
    std::vector<double> bwd(m, 0.0);   // state belief at j from steps > j
    std::vector<double> gate(m, 0.0);  // combiner-input belief per check
    std::vector<double> totals(code.n());
    std::vector<double> prefix, suffix;

    auto refresh_edge = [&](int e) {
        int v = code.edge_info[e];
        if (frozen[v]) {
            v2c[e] = llr[v];
            return;
        }
        double total = llr[v];
        for (int e2 = code.var_offset[v]; e2 < code.var_offset[v + 1]; e2++) {
            if (e2 != e) total += c2v[e2];
        }
        v2c[e] = total;
    };

    auto check_pass = [&](int j, double state_in, double state_out) {
        // Messages to the information edges of check j given the state
        // beliefs on both trellis sides.
        int degree = code.check_degree[j];
        prefix.assign(degree + 1, 0.0);
        suffix.assign(degree + 1, 0.0);
        prefix[0] = kLlrClamp;
        suffix[degree] = kLlrClamp;
        for (int t = 0; t < degree; t++) {
            prefix[t + 1] = combine(prefix[t], v2c[code.check_edges[j][t]]);
        }
        for (int t = degree - 1; t >= 0; t--) {
            suffix[t] = combine(suffix[t + 1], v2c[code.check_edges[j][t]]);
        }
        gate[j] = prefix[degree];
        double both = combine(state_in, state_out);
        for (int t = 0; t < degree; t++) {
            c2v[code.check_edges[j][t]] = combine(combine(prefix[t], suffix[t + 1]), both);
        }
    };

    int iterations = 0;
    for (int iter = 0; iter < opts.max_iter; iter++) {
        iterations = iter + 1;
        if (!opts.fresh_messages) {
            // One variable update per sweep, then exact forward-backward.
            for (int e = 0; e < edges; e++) refresh_edge(e);
            for (int j = 0; j < m; j++) {
                int degree = code.check_degree[j];
                double t = kLlrClamp;
                for (int idx = 0; idx < degree; idx++) {
                    t = combine(t, v2c[code.check_edges[j][idx]]);
                }
                gate[j] = t;
            }
            double state = kLlrClamp;  // accumulator starts in state 0
            for (int j = 0; j < m; j++) {
                fwd[j] = combine(state, gate[j]) + llr[code.k + j];
                state = fwd[j];
            }
            bwd[m - 1] = 0.0;
            for (int j = m - 2; j >= 0; j--) {
                bwd[j] = combine(gate[j + 1], bwd[j + 1] + llr[code.k + j + 1]);
            }
            for (int j = 0; j < m; j++) {
                double state_in = (j == 0) ? kLlrClamp : fwd[j - 1];
                check_pass(j, state_in, bwd[j] + llr[code.k + j]);
            }
        } else {
            // Layered variant: every trellis step consumes messages refreshed
            // at that step; the backward sweep updates them again.
            double state = kLlrClamp;
            for (int j = 0; j < m; j++) {
                for (int e : code.check_edges[j]) refresh_edge(e);
                check_pass(j, state, bwd[j] + llr[code.k + j]);
                fwd[j] = combine(state, gate[j]) + llr[code.k + j];
                state = fwd[j];
            }
            double back = 0.0;  // belief about state j from steps beyond j
            for (int j = m - 1; j >= 0; j--) {
                for (int e : code.check_edges[j]) refresh_edge(e);
                double state_in = (j == 0) ? kLlrClamp : fwd[j - 1];
                check_pass(j, state_in, back + llr[code.k + j]);
                bwd[j] = back;
                back = combine(gate[j], back + llr[code.k + j]);
            }
        }

        for (int v = 0; v < code.k; v++) {
            totals[v] = llr[v];
        }
        for (int e = 0; e < edges; e++) {
            totals[code.edge_info[e]] += c2v[e];
        }
        for (int v = 0; v < code.k; v++) {
            if (frozen[v]) totals[v] = llr[v];
        }
        for (int j = 0; j < m; j++) {
            double state_in = (j == 0) ? kLlrClamp : fwd[j - 1];
            totals[code.k + j] = combine(state_in, gate[j]) + llr[code.k + j] + bwd[j];
        }
        if (opts.early_stop) {
            std::vector<std::uint8_t> hard(code.n());
            for (int v = 0; v < code.n(); v++) hard[v] = hard_bit(totals[v]);
            if (checks_satisfied(code, hard)) break;
        }
    }
    if (iterations == 0) {
        totals = llr;
    }
    return finish(code, totals, iterations);
}

DecodeResult decode(const IraCode& code, const std::vector<double>& channel_llrs,
                    Scheduling scheduling, const DecodeOptions& opts) {
    return scheduling == Scheduling::Flooding ? decode_flooding(code, channel_llrs, opts)
                                              : decode_turbo(code, channel_llrs, opts);
}

namespace {

double log_add(double x, double y) {
    if (x < y) std::swap(x, y);
    if (y == -std::numeric_limits<double>::infinity()) return x;
    return x + std::log1p(std::exp(y - x));
}

}  // namespace

std::vector<double> map_posteriors(const IraCode& code,
                                   const std::vector<double>& channel_llrs) {
    const int payload_len = code.payload_bits();
    if (payload_len > 16) {
        throw std::invalid_argument("map_posteriors: payload too large to enumerate");
    }
    const std::vector<double> llr = conditioned_input(code, channel_llrs);
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> mass0(code.k, ninf), mass1(code.k, ninf);

    std::vector<std::uint8_t> payload(payload_len);
    for (std::uint32_t assign = 0; assign < (1u << payload_len); assign++) {
        for (int t = 0; t < payload_len; t++) {
            payload[t] = (assign >> t) & 1;
        }
        Codeword word = encode(code, payload);
        double loglik = 0.0;
        for (int i = 0; i < code.k; i++) {
            loglik += word.systematic[i] ? -0.5 * llr[i] : 0.5 * llr[i];
        }
        for (int j = 0; j < code.m; j++) {
            loglik += word.parity[j] ? -0.5 * llr[code.k + j] : 0.5 * llr[code.k + j];
        }
        for (int i = 0; i < code.k; i++) {
            if (word.systematic[i]) {
                mass1[i] = log_add(mass1[i], loglik);
            } else {
                mass0[i] = log_add(mass0[i], loglik);
            }
        }
    }
    std::vector<double> posterior(code.k);
    for (int i = 0; i < code.k; i++) {
        if (mass1[i] == ninf) {
            posterior[i] = kLlrClamp;
        } else if (mass0[i] == ninf) {
            posterior[i] = -kLlrClamp;
        } else {
            posterior[i] = mass0[i] - mass1[i];
        }
    }
    return posterior;
}

std::vector<std::uint8_t> brute_force_map(const IraCode& code,
                                          const std::vector<double>& channel_llrs) {
    std::vector<double> posterior = map_posteriors(code, channel_llrs);
    std::vector<std::uint8_t> hard(code.k);
    for (int i = 0; i < code.k; i++) {
        hard[i] = hard_bit(posterior[i]);
    }
    return hard;
}

std::vector<std::uint8_t> brute_force_ml(const IraCode& code,
                                         const std::vector<double>& channel_llrs) {
    const int payload_len = code.payload_bits();
    if (payload_len > 16) {
        throw std::invalid_argument("brute_force_ml: payload too large to enumerate");
    }
    const std::vector<double> llr = conditioned_input(code, channel_llrs);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> best_info;
    std::vector<std::uint8_t> payload(payload_len);
    for (std::uint32_t assign = 0; assign < (1u << payload_len); assign++) {
        for (int t = 0; t < payload_len; t++) {
            payload[t] = (assign >> t) & 1;
        }
        Codeword word = encode(code, payload);
        double loglik = 0.0;
        for (int i = 0; i < code.k; i++) {
            loglik += word.systematic[i] ? -0.5 * llr[i] : 0.5 * llr[i];
        }
        for (int j = 0; j < code.m; j++) {
            loglik += word.parity[j] ? -0.5 * llr[code.k + j] : 0.5 * llr[code.k + j];
        }
        if (loglik > best) {
            best = loglik;
            best_info = word.systematic;
        }
    }
    return best_info;
}

}  // namespace ira
