#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ira/analysis.hpp"
#include "ira/baseline.hpp"
#include "ira/channel.hpp"
#include "ira/code.hpp"
#include "ira/decoder.hpp"
#include "ira/graph.hpp"
#include "ira/interleaver.hpp"
#include "ira/sim.hpp"

namespace {

using namespace ira;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    return in;
}

DitherSequence small_table(const std::string& name) {
    if (name == "fig7") return reference_dither24();
    if (name == "gr24") return gr24();
    if (name == "gr25") return gr25();
    throw std::runtime_error("unknown small table: " + name);
}

ShiftMode shift_mode(const std::string& name) {
    if (name == "skip-first") return ShiftMode::SkipFirst;
    if (name == "cyclic") return ShiftMode::Cyclic;
    if (name == "none") return ShiftMode::None;
    throw std::runtime_error("unknown shift mode: " + name);
}

IraCode load_code(const std::string& source) {
    if (source == "builtin") return build_reference_code();
    auto in = open_in(source);
    return read_code(in);
}

std::vector<double> load_llrs(const std::string& path) {
    auto in = open_in(path);
    std::vector<double> llrs;
    double v;
    while (in >> v) llrs.push_back(v);
    return llrs;
}

std::vector<std::uint8_t> load_bits(const std::string& path) {
    std::vector<std::uint8_t> bits;
    auto read_from = [&](std::istream& in) {
        char c;
        while (in.get(c)) {
            if (c == '0') bits.push_back(0);
            if (c == '1') bits.push_back(1);
        }
    };
    if (path == "-") {
        read_from(std::cin);
    } else {
        auto in = open_in(path);
        read_from(in);
    }
    return bits;
}

void print_bits(const std::vector<std::uint8_t>& bits) {
    for (auto b : bits) std::cout << static_cast<int>(b);
    std::cout << "\n";
}

std::pair<int, int> parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::runtime_error("range must be a:b, got " + text);
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

std::array<int, 4> parse_generators(const std::string& text) {
    std::array<int, 4> gens{};
    std::stringstream ss(text);
    std::string tok;
    size_t at = 0;
    while (std::getline(ss, tok, ',')) {
        if (at >= gens.size()) throw std::runtime_error("need exactly 4 generators");
        gens[at++] = std::stoi(tok, nullptr, 8);
    }
    if (at != gens.size()) throw std::runtime_error("need exactly 4 generators");
    return gens;
}

void emit_sweep_outputs(const std::vector<std::pair<SweepConfig, std::vector<SimResult>>>& runs,
                        const std::string& csv_path, const std::string& svg_path) {
    std::ostringstream csv;
    write_csv_header(csv);
    for (const auto& [config, results] : runs) {
        write_csv_rows(csv, config, results);
    }
    if (csv_path.empty()) {
        std::cout << csv.str();
    } else {
        open_out(csv_path) << csv.str();
        std::cout << "wrote " << csv_path << "\n";
    }
    if (!svg_path.empty()) {
        std::vector<PlotSeries> series;
        for (const auto& [config, results] : runs) {
            std::string base = system_name(config.system) + "/" + scheduling_name(config);
            PlotSeries fer{base + " fer", {}}, ber{base + " ber", {}};
            for (const auto& r : results) {
                fer.points.emplace_back(r.ebno_db, r.fer);
                ber.points.emplace_back(r.ebno_db, r.ber);
            }
            series.push_back(std::move(fer));
            series.push_back(std::move(ber));
        }
        auto svg = open_out(svg_path);
        write_log_plot_svg(svg, series, "Eb/N0 (dB)", "rate");
        std::cout << "wrote " << svg_path << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRA code toolkit: Gruenbaum-dithered interleavers, iterative "
                 "decoding, convolutional baseline, AWGN simulation"};
    app.require_subcommand(1);

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "embedded graph utilities");
    graph_cmd->require_subcommand(1);
    std::string graph_out;
    auto* graph_export = graph_cmd->add_subcommand("export", "edge list, one 'u v' per line");
    graph_export->add_option("--out", graph_out, "output file (default stdout)");
    int dither_start = 0;
    auto* graph_dither =
        graph_cmd->add_subcommand("dither", "derive a dither sequence from the graph");
    graph_dither->add_option("--start", dither_start, "Hamiltonian search start vertex");

    // interleave gen
    auto* interleave_cmd = app.add_subcommand("interleave", "interleaver construction");
    interleave_cmd->require_subcommand(1);
    auto* gen = interleave_cmd->add_subcommand("gen", "build a dithered relative-prime permutation");
    int gen_n = 1344, gen_p = 173, gen_s = 1184;
    std::string gen_small = "fig7", gen_shift = "skip-first", gen_out;
    gen->add_option("--n", gen_n, "total length");
    gen->add_option("--p", gen_p, "multiplier, coprime with n");
    gen->add_option("--s", gen_s, "offset");
    gen->add_option("--small", gen_small, "small table: fig7|gr24|gr25");
    gen->add_option("--shift", gen_shift, "shift pass: skip-first|cyclic|none");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // code build
    auto* code_cmd = app.add_subcommand("code", "code construction");
    code_cmd->require_subcommand(1);
    auto* code_build = code_cmd->add_subcommand("build", "realize the Tanner graph");
    std::string build_profile = "paper", build_rate = "1/4";
    std::string build_interleaver = "builtin", build_pins = "default", build_out;
    int build_k = 192;
    code_build->add_option("--profile", build_profile, "degree profile (paper)");
    code_build->add_option("--k", build_k, "information length");
    code_build->add_option("--rate", build_rate, "code rate as a/b");
    code_build->add_option("--interleaver", build_interleaver, "permutation file or 'builtin'");
    code_build->add_option("--pins", build_pins, "default|none");
    code_build->add_option("--out", build_out, "output file (default stdout)");

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "decode one LLR frame");
    std::string dec_sched = "turbo", dec_in, dec_code = "builtin";
    int dec_iters = 72;
    bool dec_early = false, dec_minsum = false, dec_sweep_update = false;
    decode_cmd->add_option("--scheduling", dec_sched, "flooding|turbo");
    decode_cmd->add_option("--iters", dec_iters, "iteration count");
    decode_cmd->add_option("--in", dec_in, "LLR file, one value per line, systematic first")
        ->required();
    decode_cmd->add_option("--code", dec_code, "code file or 'builtin'");
    decode_cmd->add_flag("--early-stop", dec_early, "stop when all checks pass");
    decode_cmd->add_flag("--min-sum", dec_minsum, "min-sum check rule");
    decode_cmd->add_flag("--sweep-update", dec_sweep_update,
                         "turbo: refresh variable messages once per sweep");

    // baseline
    auto* baseline_cmd = app.add_subcommand("baseline", "convolutional comparison system");
    baseline_cmd->require_subcommand(1);
    std::string gens_text = "463,535,733,745";
    std::string base_in = "-";
    auto* base_encode = baseline_cmd->add_subcommand("encode", "encode 192 payload bits");
    base_encode->add_option("--gens", gens_text, "four octal generators");
    base_encode->add_option("--in", base_in, "bit file or '-' for stdin");
    auto* base_decode = baseline_cmd->add_subcommand("decode", "Viterbi-decode 800 LLRs");
    std::string base_llr_in;
    base_decode->add_option("--gens", gens_text, "four octal generators");
    base_decode->add_option("--in", base_llr_in, "LLR file")->required();

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "Tanner graph defect analysis");
    analyze_cmd->require_subcommand(1);
    auto* defects = analyze_cmd->add_subcommand("defects", "cycle-4 and stopping-set report");
    std::string defects_code = "builtin";
    int defects_bound = 4;
    defects->add_option("--code", defects_code, "code file or 'builtin'");
    defects->add_option("--stopping-bound", defects_bound, "stopping set search bound (<=6)");
    auto* search = analyze_cmd->add_subcommand("search-ps", "score (p,s) candidates");
    std::string p_range_text, s_range_text, search_small = "fig7";
    long search_sample = 0;
    std::uint64_t search_seed = 1;
    int search_bound = 3;
    search->add_option("--p-range", p_range_text, "a:b half-open")->required();
    search->add_option("--s-range", s_range_text, "a:b half-open")->required();
    search->add_option("--sample", search_sample, "random sample size (0: exhaustive)");
    search->add_option("--seed", search_seed, "sample seed");
    search->add_option("--small", search_small, "small table: fig7|gr24");
    search->add_option("--stopping-bound", search_bound, "stopping set bound per candidate");

    // sim sweep
    auto* sim_cmd = app.add_subcommand("sim", "Monte-Carlo simulation");
    sim_cmd->require_subcommand(1);
    auto* sweep = sim_cmd->add_subcommand("sweep", "FER/BER sweep over Eb/N0 points");
    std::string sweep_config_path, sweep_system, sweep_sched, sweep_snr, sweep_eb;
    std::string sweep_csv, sweep_svg;
    long sweep_frames = -1, sweep_target = -1;
    int sweep_iters = -1, sweep_workers = -1;
    std::int64_t sweep_seed = -1;
    sweep->add_option("--config", sweep_config_path, "flat key=value config file");
    sweep->add_option("--system", sweep_system, "ira|conv|both");
    sweep->add_option("--scheduling", sweep_sched, "flooding|turbo");
    sweep->add_option("--iters", sweep_iters, "decoder iterations");
    sweep->add_option("--snr", sweep_snr, "points a,b,c or range a:b:step (dB)");
    sweep->add_option("--frames", sweep_frames, "max frames per point");
    sweep->add_option("--target-fe", sweep_target, "stop a point after this many frame errors");
    sweep->add_option("--seed", sweep_seed, "master seed");
    sweep->add_option("--workers", sweep_workers, "worker threads (0: hardware)");
    sweep->add_option("--eb-accounting", sweep_eb, "payload|frame");
    sweep->add_option("--csv", sweep_csv, "CSV output path (default stdout)");
    sweep->add_option("--svg", sweep_svg, "SVG plot output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*graph_export) {
            SimpleGraph g = gruenbaum_graph();
            if (graph_out.empty()) {
                write_edge_list(g, std::cout);
            } else {
                auto out = open_out(graph_out);
                write_edge_list(g, out);
            }
        } else if (*graph_dither) {
            SimpleGraph g = gruenbaum_graph();
            auto ham = find_hamiltonian_path(g, dither_start);
            if (!ham) {
                std::cerr << "no Hamiltonian path from vertex " << dither_start << "\n";
                return 1;
            }
            auto seq = derive_dither_sequence(g, *ham);
            if (!seq) {
                std::cerr << "residual subgraph admits no covering path\n";
                return 1;
            }
            for (int i = 0; i < seq->length(); i++) {
                std::cout << (i ? " " : "") << seq->values[i];
            }
            std::cout << "\n";
        } else if (*gen) {
            InterleaverSpec spec{gen_n, gen_p, gen_s, small_table(gen_small),
                                 shift_mode(gen_shift)};
            Permutation perm = build_gruenbaum_interleaver(spec);
            if (gen_out.empty()) {
                write_permutation(perm, std::cout);
            } else {
                auto out = open_out(gen_out);
                write_permutation(perm, out);
            }
        } else if (*code_build) {
            if (build_profile != "paper") {
                throw std::runtime_error("only the 'paper' profile is built in");
            }
            auto slash = build_rate.find('/');
            if (slash == std::string::npos) throw std::runtime_error("rate must be a/b");
            int num = std::stoi(build_rate.substr(0, slash));
            int den = std::stoi(build_rate.substr(slash + 1));
            if (num <= 0 || den <= num || (build_k * (den - num)) % num != 0) {
                throw std::runtime_error("infeasible rate for this k");
            }
            int m = build_k * (den - num) / num;
            Permutation perm;
            if (build_interleaver == "builtin") {
                perm = build_gruenbaum_interleaver(reference_spec());
            } else {
                auto in = open_in(build_interleaver);
                perm = read_permutation(in);
            }
            RealizedDegrees rep = realize_degrees(builtin_profile(), build_k, perm.length());
            std::vector<int> checks = realize_check_degrees(perm.length(), m);
            std::vector<std::pair<int, int>> pins;
            if (build_pins == "default") {
                pins = default_pins();
            } else if (build_pins != "none") {
                throw std::runtime_error("--pins must be default or none");
            }
            IraCode code = build_code(rep, perm, checks, pins);
            if (build_out.empty()) {
                write_code(code, std::cout);
            } else {
                auto out = open_out(build_out);
                write_code(code, out);
            }
        } else if (*decode_cmd) {
            IraCode code = load_code(dec_code);
            std::vector<double> llrs = load_llrs(dec_in);
            DecodeOptions opts;
            opts.max_iter = dec_iters;
            opts.early_stop = dec_early;
            opts.min_sum = dec_minsum;
            opts.fresh_messages = !dec_sweep_update;
            Scheduling sched;
            if (dec_sched == "flooding") {
                sched = Scheduling::Flooding;
            } else if (dec_sched == "turbo") {
                sched = Scheduling::Turbo;
            } else {
                throw std::runtime_error("--scheduling must be flooding or turbo");
            }
            DecodeResult result = decode(code, llrs, sched, opts);
            print_bits(result.hard_bits);
            std::cerr << "converged=" << (result.converged ? "yes" : "no")
                      << " iterations=" << result.iterations_used << "\n";
        } else if (*base_encode) {
            ConvCodeSpec spec;
            spec.generators = parse_generators(gens_text);
            auto payload = load_bits(base_in);
            if (payload.size() != 192) {
                throw std::runtime_error("baseline encode expects 192 payload bits");
            }
            print_bits(conv_encode(spec, payload));
        } else if (*base_decode) {
            ConvCodeSpec spec;
            spec.generators = parse_generators(gens_text);
            print_bits(viterbi_decode(spec, load_llrs(base_llr_in)));
        } else if (*defects) {
            IraCode code = load_code(defects_code);
            DefectReport cycles = count_cycles4(code);
            DefectReport stopping = find_stopping_sets(code, defects_bound);
            std::cout << "cycle4_total " << cycles.cycle4_total << "\n";
            std::cout << "cycle4_min_degree " << cycles.cycle4_min_degree << "\n";
            std::cout << "min_stopping_set ";
            if (stopping.min_stopping_set_size) {
                std::cout << *stopping.min_stopping_set_size << "\n";
            } else {
                std::cout << "none\n";
            }
            std::cout << "searched_bound " << stopping.searched_bound << "\n";
        } else if (*search) {
            PsSearchOptions opts;
            opts.stopping_bound = search_bound;
            opts.sample = search_sample;
            opts.sample_seed = search_seed;
            PsSearchResult result = search_ps(1344, small_table(search_small),
                                              parse_range(p_range_text),
                                              parse_range(s_range_text), opts);
            std::cout << "p s cycle4_min_degree cycle4_total min_stopping_set\n";
            for (const auto& cand : result.scored) {
                std::cout << cand.p << " " << cand.s << " "
                          << cand.report.cycle4_min_degree << " "
                          << cand.report.cycle4_total << " ";
                if (cand.report.min_stopping_set_size) {
                    std::cout << *cand.report.min_stopping_set_size;
                } else {
                    std::cout << "none";
                }
                std::cout << "\n";
            }
            std::cout << "best " << result.best.p << " " << result.best.s << "\n";
        } else if (*sweep) {
            SweepConfig base;
            if (!sweep_config_path.empty()) {
                auto in = open_in(sweep_config_path);
                base = parse_config(in);
            }
            bool both = sweep_system == "both";
            if (sweep_system == "ira") base.system = System::Ira;
            if (sweep_system == "conv") base.system = System::Conv;
            if (!sweep_sched.empty()) {
                base.scheduling = sweep_sched == "flooding" ? Scheduling::Flooding
                                                            : Scheduling::Turbo;
            }
            if (sweep_iters >= 0) base.iters = sweep_iters;
            if (sweep_frames >= 0) base.max_frames = sweep_frames;
            if (sweep_target >= 0) base.target_frame_errors = sweep_target;
            if (sweep_seed >= 0) base.seed = static_cast<std::uint64_t>(sweep_seed);
            if (sweep_workers >= 0) base.workers = sweep_workers;
            if (!sweep_eb.empty()) {
                base.eb_accounting = sweep_eb == "frame" ? EbAccounting::Frame
                                                         : EbAccounting::Payload;
            }
            if (!sweep_snr.empty()) {
                base.snr_points_db.clear();
                if (sweep_snr.find(':') != std::string::npos) {
                    std::stringstream ss(sweep_snr);
                    std::string tok;
                    std::vector<double> parts;
                    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
                    if (parts.size() != 3 || parts[2] <= 0) {
                        throw std::runtime_error("--snr range must be a:b:step");
                    }
                    for (double x = parts[0]; x <= parts[1] + 1e-9; x += parts[2]) {
                        base.snr_points_db.push_back(x);
                    }
                } else {
                    std::stringstream ss(sweep_snr);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) {
                        base.snr_points_db.push_back(std::stod(tok));
                    }
                }
            }
            if (base.snr_points_db.empty()) {
                throw std::runtime_error("no SNR points: use --snr or a config file");
            }
            std::vector<std::pair<SweepConfig, std::vector<SimResult>>> runs;
            if (both) {
                SweepConfig ira_config = base;
                ira_config.system = System::Ira;
                runs.emplace_back(ira_config, run_sweep(ira_config));
                SweepConfig conv_config = base;
                conv_config.system = System::Conv;
                runs.emplace_back(conv_config, run_sweep(conv_config));
            } else {
                runs.emplace_back(base, run_sweep(base));
            }
            emit_sweep_outputs(runs, sweep_csv, sweep_svg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
