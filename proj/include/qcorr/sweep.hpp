// sweep.hpp
// Correlation dynamics over kappa*t grids: configuration parsing, the
// parallel sweep runner, CSV output and a plotting script generator.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/discord.hpp"

namespace qcorr {

enum class Measure { Tau, Gqd, Ppt, Entropy };
enum class Method { Analytic, Numeric, Both };

std::string_view measure_name(Measure m);
std::string_view method_name(Method m);

struct SweepConfig {
    std::vector<ChannelKind> channels{std::begin(kAllChannels), std::end(kAllChannels)};
    double kt_max = 0.6;
    int steps = 121;
    std::vector<Measure> measures{Measure::Tau, Measure::Gqd};
    Method method = Method::Analytic;
    OptimizerConfig optimizer;
    std::filesystem::path output_path = "sweep.csv";
    bool emit_plot = false;
    int jobs = 1;
    bool verify = false;

    bool wants(Measure m) const;

    // Throws UsageError when an invariant is violated.
    void validate() const;
};

// Bad flag, bad value or bad config file; carries the message to show.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --help was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kDefaultConfigFile = "qcorr.conf";

// Parses command-line flags. A config file of `key = value` lines (keys are
// the long flag names) is read from --config, or from qcorr.conf in the
// working directory when present. Flags override file values, which
// override defaults.
SweepConfig parse_config(const std::vector<std::string>& args);

struct SweepRecord {
    ChannelKind channel = ChannelKind::PauliZ;
    double kappa_t = 0.0;
    std::optional<double> tau_analytic;
    std::optional<double> tau_numeric;
    std::optional<double> gqd_analytic;
    std::optional<double> gqd_numeric;
    std::optional<double> ppt_min_eig;
    std::optional<double> entropy;
};

// kt_max * i / (steps - 1), i = 0 .. steps-1.
std::vector<double> kappa_t_grid(double kt_max, int steps);

// One record per (channel, kappa*t) cell, channel-major then kappa*t
// ascending, independent of cfg.jobs.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

// Evaluates one cell.
SweepRecord evaluate_cell(const SweepConfig& cfg, ChannelKind channel, double kappa_t);

inline constexpr const char* kCsvHeader =
    "channel,kappa_t,tau_analytic,tau_numeric,gqd_analytic,gqd_numeric,ppt_min_eig,entropy";

// Real formatted with 12 significant digits.
std::string format_real(double v);

std::string csv_text(const std::vector<SweepRecord>& records);

// Writes atomically (temporary file + rename); nothing is left behind on
// failure.
void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);

// Python/matplotlib script that reads `csv_path` and draws one panel per
// measure with one curve per channel and populated column.
std::string plot_script_text(const std::vector<SweepRecord>& records, const std::filesystem::path& csv_path);
void emit_plot_script(const std::vector<SweepRecord>& records, const std::filesystem::path& csv_path,
                      const std::filesystem::path& script_path);

// Default script location next to the CSV: <stem>_plot.py.
std::filesystem::path plot_script_path(const std::filesystem::path& csv_path);

}  // namespace qcorr
