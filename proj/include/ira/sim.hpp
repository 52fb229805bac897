#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ira/baseline.hpp"
#include "ira/channel.hpp"
#include "ira/code.hpp"
#include "ira/decoder.hpp"

namespace ira {

enum class System { Ira, Conv };

struct SweepConfig {
    System system = System::Ira;
    Scheduling scheduling = Scheduling::Turbo;
    int iters = 72;
    std::vector<double> snr_points_db;
    long max_frames = 10000;
    long target_frame_errors = 100;
    std::uint64_t seed = 1;
    EbAccounting eb_accounting = EbAccounting::Payload;
    int workers = 0;  // 0: hardware concurrency
};

struct SimResult {
    double ebno_db = 0.0;
    long frames_run = 0;
    long bit_errors = 0;
    long frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;
};

// Monte-Carlo loop for one Eb/N0 point: seeded random payloads, encode,
// BPSK, AWGN, decode, tally payload bit and frame errors. Stops at
// max_frames or target_frame_errors, whichever comes first; the stopping
// prefix is independent of the worker count.
SimResult run_point(const SweepConfig& config, double ebno_db, int point_index);

std::vector<SimResult> run_sweep(const SweepConfig& config);

// CSV schema (header exact):
// system,scheduling,ebno_db,frames,bit_errors,frame_errors,ber,fer,iters,seed
struct CsvRow {
    std::string system;
    std::string scheduling;
    int iters = 0;
    SimResult result;
};

void write_csv_header(std::ostream& out);
void write_csv_rows(std::ostream& out, const SweepConfig& config,
                    const std::vector<SimResult>& results);
std::vector<CsvRow> read_csv(std::istream& in);

std::string system_name(System system);
std::string scheduling_name(const SweepConfig& config);

// Hand-rolled SVG: one polyline per series, log10 y axis.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (ebno_db, rate)
};
void write_log_plot_svg(std::ostream& out, const std::vector<PlotSeries>& series,
                        const std::string& x_label, const std::string& y_label);

// Flat key-value config text (key = value per line, '#' comments).
SweepConfig parse_config(std::istream& in);

// Payload bit counts used by the Eb accounting and the BER denominator.
int sim_payload_bits(System system);
int sim_channel_bits(System system);
int sim_info_bits_for_eb(const SweepConfig& config);

}  // namespace ira
