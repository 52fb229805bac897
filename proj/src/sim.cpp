#include "ira/sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ira {

namespace {

constexpr long kWaveFrames = 256;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("bad number in CSV: " + text);
    }
    return v;
}

struct FrameOutcome {
    int bit_errors = 0;
    bool frame_error = false;
};

// Everything a worker needs; built once per point.
struct PointContext {
    const SweepConfig* config = nullptr;
    double sigma = 0.0;
    int point_index = 0;
    const IraCode* ira_code = nullptr;
    const ConvCodeSpec* conv_spec = nullptr;
};

FrameOutcome simulate_frame(const PointContext& ctx, long frame_index) {
    const SweepConfig& config = *ctx.config;
    RandomStream stream =
        RandomStream::for_frame(config.seed, ctx.point_index, frame_index);
    const int payload_len = sim_payload_bits(config.system);
    std::vector<std::uint8_t> payload(payload_len);
    for (auto& b : payload) b = stream.bit();

    std::vector<std::uint8_t> channel_bits;
    if (config.system == System::Ira) {
        channel_bits = to_channel_bits(encode(*ctx.ira_code, payload));
    } else {
        channel_bits = conv_encode(*ctx.conv_spec, payload);
    }
    std::vector<double> symbols = modulate(channel_bits);
    add_noise(symbols, ctx.sigma, stream);
    std::vector<double> llrs = llr_vector(symbols, ctx.sigma);

    std::vector<std::uint8_t> decoded;
    if (config.system == System::Ira) {
        DecodeOptions opts;
        opts.max_iter = config.iters;
        DecodeResult result = decode(*ctx.ira_code, llrs, config.scheduling, opts);
        decoded = extract_payload(*ctx.ira_code, result.hard_bits);
    } else {
        decoded = viterbi_decode(*ctx.conv_spec, llrs);
    }

    FrameOutcome outcome;
    for (int i = 0; i < payload_len; i++) {
        if ((decoded[i] ^ payload[i]) & 1) outcome.bit_errors++;
    }
    outcome.frame_error = outcome.bit_errors > 0;
    return outcome;
}

}  // namespace

int sim_payload_bits(System system) { return system == System::Ira ? 184 : 192; }

int sim_channel_bits(System system) { return system == System::Ira ? 768 : 800; }

int sim_info_bits_for_eb(const SweepConfig& config) {
    if (config.eb_accounting == EbAccounting::Frame) return 192;
    return sim_payload_bits(config.system);
}

SimResult run_point(const SweepConfig& config, double ebno_db, int point_index) {
    if (config.max_frames < 1) throw std::invalid_argument("run_point: max_frames < 1");
    if (config.iters < 0) throw std::invalid_argument("run_point: bad iteration count");

    auto start_time = std::chrono::steady_clock::now();

    IraCode ira_code;
    ConvCodeSpec conv_spec;
    PointContext ctx;
    ctx.config = &config;
    ctx.point_index = point_index;
    if (config.system == System::Ira) {
        ira_code = build_reference_code();
        ctx.ira_code = &ira_code;
    } else {
        conv_spec.validate();
        ctx.conv_spec = &conv_spec;
    }
    ctx.sigma = ebno_to_sigma(ebno_db, sim_info_bits_for_eb(config),
                              sim_channel_bits(config.system));

    int workers = config.workers > 0
                      ? config.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    SimResult result;
    result.ebno_db = ebno_db;
    result.seed = config.seed;

    // Frames are processed in fixed-size waves. Outcomes are keyed by frame
    // index, and the stopping prefix is recomputed from per-frame outcomes,
    // so tallies do not depend on the worker count.
    long frames_done = 0;
    bool stopped = false;
    std::vector<FrameOutcome> outcomes(kWaveFrames);
    while (!stopped && frames_done < config.max_frames) {
        long wave = std::min(kWaveFrames, config.max_frames - frames_done);
        std::atomic<long> cursor{0};
        auto work = [&]() {
            while (true) {
                long offset = cursor.fetch_add(1);
                if (offset >= wave) break;
                outcomes[offset] = simulate_frame(ctx, frames_done + offset);
            }
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; w++) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
        for (long offset = 0; offset < wave; offset++) {
            result.frames_run++;
            result.bit_errors += outcomes[offset].bit_errors;
            if (outcomes[offset].frame_error) result.frame_errors++;
            if (result.frame_errors >= config.target_frame_errors) {
                stopped = true;
                break;
            }
        }
        frames_done += wave;
    }

    const int payload_len = sim_payload_bits(config.system);
    result.ber = static_cast<double>(result.bit_errors) /
                 (static_cast<double>(result.frames_run) * payload_len);
    result.fer = static_cast<double>(result.frame_errors) /
                 static_cast<double>(result.frames_run);
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time)
            .count();
    return result;
}

std::vector<SimResult> run_sweep(const SweepConfig& config) {
    if (config.snr_points_db.empty()) {
        throw std::invalid_argument("run_sweep: no SNR points");
    }
    std::vector<SimResult> results;
    results.reserve(config.snr_points_db.size());
    for (size_t i = 0; i < config.snr_points_db.size(); i++) {
        results.push_back(run_point(config, config.snr_points_db[i], static_cast<int>(i)));
    }
    return results;
}

std::string system_name(System system) {
    return system == System::Ira ? "ira" : "conv";
}

std::string scheduling_name(const SweepConfig& config) {
    if (config.system == System::Conv) return "viterbi";
    return config.scheduling == Scheduling::Flooding ? "flooding" : "turbo";
}

void write_csv_header(std::ostream& out) {
    out << "system,scheduling,ebno_db,frames,bit_errors,frame_errors,ber,fer,iters,seed\n";
}

void write_csv_rows(std::ostream& out, const SweepConfig& config,
                    const std::vector<SimResult>& results) {
    for (const SimResult& r : results) {
        out << system_name(config.system) << "," << scheduling_name(config) << ","
            << format_double(r.ebno_db) << "," << r.frames_run << "," << r.bit_errors
            << "," << r.frame_errors << "," << format_double(r.ber) << ","
            << format_double(r.fer) << "," << config.iters << "," << r.seed << "\n";
    }
}

std::vector<CsvRow> read_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("CSV: empty file");
    if (line != "system,scheduling,ebno_db,frames,bit_errors,frame_errors,ber,fer,iters,seed") {
        throw std::runtime_error("CSV: unexpected header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 10) throw std::runtime_error("CSV: bad row: " + line);
        CsvRow row;
        row.system = fields[0];
        row.scheduling = fields[1];
        row.result.ebno_db = parse_double(fields[2]);
        row.result.frames_run = std::stol(fields[3]);
        row.result.bit_errors = std::stol(fields[4]);
        row.result.frame_errors = std::stol(fields[5]);
        row.result.ber = parse_double(fields[6]);
        row.result.fer = parse_double(fields[7]);
        row.iters = std::stoi(fields[8]);
        row.result.seed = std::stoull(fields[9]);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_log_plot_svg(std::ostream& out, const std::vector<PlotSeries>& series,
                        const std::string& x_label, const std::string& y_label) {
    const int width = 720, height = 520;
    const int left = 70, right = 30, top = 30, bottom = 60;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                            "#ff7f0e", "#8c564b"};

    double x_min = 1e300, x_max = -1e300, y_min = 0.0, y_max = -300.0;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (y <= 0.0) continue;
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            double ly = std::log10(y);
            y_min = std::min(y_min, ly);
            y_max = std::max(y_max, ly);
        }
    }
    if (x_min > x_max) {
        x_min = 0.0;
        x_max = 1.0;
        y_min = -1.0;
        y_max = 0.0;
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    y_min = std::floor(y_min);
    y_max = std::ceil(std::max(y_max, y_min + 1.0));

    auto px = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (width - left - right);
    };
    auto py = [&](double ly) {
        return height - bottom -
               (ly - y_min) / (y_max - y_min) * (height - top - bottom);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
        << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\""
        << width - right << "\" y2=\"" << height - bottom << "\" stroke=\"black\"/>\n";
    // Decade gridlines and y tick labels
    for (int d = static_cast<int>(y_min); d <= static_cast<int>(y_max); d++) {
        double y = py(d);
        out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width - right
            << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"12\">1e" << d << "</text>\n";
    }
    // x ticks every 0.5 dB
    for (double x = std::ceil(x_min * 2.0) / 2.0; x <= x_max + 1e-9; x += 0.5) {
        out << "<line x1=\"" << px(x) << "\" y1=\"" << height - bottom << "\" x2=\""
            << px(x) << "\" y2=\"" << height - bottom + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(x) << "\" y=\"" << height - bottom + 20
            << "\" text-anchor=\"middle\" font-size=\"12\">" << x << "</text>\n";
    }
    out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
    out << "<text x=\"18\" y=\"" << (top + height - bottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
        << (top + height - bottom) / 2 << ")\">" << y_label << "</text>\n";

    for (size_t s = 0; s < series.size(); s++) {
        const char* color = colors[s % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : series[s].points) {
            if (y <= 0.0) continue;
            out << px(x) << "," << py(std::log10(y)) << " ";
        }
        out << "\"/>\n";
        for (auto [x, y] : series[s].points) {
            if (y <= 0.0) continue;
            out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(std::log10(y))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        out << "<text x=\"" << width - right - 10 << "\" y=\"" << top + 18 * (s + 1)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">"
            << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

SweepConfig parse_config(std::istream& in) {
    SweepConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (blank) continue;
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "system") {
            if (value == "ira") {
                config.system = System::Ira;
            } else if (value == "conv") {
                config.system = System::Conv;
            } else {
                throw std::runtime_error("config: system must be ira or conv");
            }
        } else if (key == "scheduling") {
            if (value == "flooding") {
                config.scheduling = Scheduling::Flooding;
            } else if (value == "turbo") {
                config.scheduling = Scheduling::Turbo;
            } else {
                throw std::runtime_error("config: scheduling must be flooding or turbo");
            }
        } else if (key == "iters") {
            config.iters = std::stoi(value);
        } else if (key == "snr_points") {
            config.snr_points_db.clear();
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                config.snr_points_db.push_back(std::stod(trim(tok)));
            }
        } else if (key == "ebno_db") {
            config.snr_points_db = {std::stod(value)};
        } else if (key == "max_frames") {
            config.max_frames = std::stol(value);
        } else if (key == "target_frame_errors") {
            config.target_frame_errors = std::stol(value);
        } else if (key == "seed") {
            config.seed = std::stoull(value);
        } else if (key == "eb_accounting") {
            if (value == "payload") {
                config.eb_accounting = EbAccounting::Payload;
            } else if (value == "frame") {
                config.eb_accounting = EbAccounting::Frame;
            } else {
                throw std::runtime_error("config: eb_accounting must be payload or frame");
            }
        } else if (key == "workers") {
            config.workers = std::stoi(value);
        } else {
            throw std::runtime_error("config: unknown key '" + key + "'");
        }
    }
    return config;
}

}  // namespace ira
