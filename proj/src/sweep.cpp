#include "qcorr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qcorr/entanglement.hpp"

namespace qcorr {

namespace {

Measure parse_measure(std::string_view s) {
    for (Measure m : {Measure::Tau, Measure::Gqd, Measure::Ppt, Measure::Entropy})
        if (measure_name(m) == s) return m;
    throw UsageError("unknown measure '" + std::string(s) + "'");
}

Method parse_method(std::string_view s) {
    for (Method m : {Method::Analytic, Method::Numeric, Method::Both})
        if (method_name(m) == s) return m;
    throw UsageError("unknown method '" + std::string(s) + "'");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
            out << text;
            out.flush();
            if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

std::string optional_field(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::Tau: return "tau";
        case Measure::Gqd: return "gqd";
        case Measure::Ppt: return "ppt";
        case Measure::Entropy: return "entropy";
    }
    return "?";
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::Analytic: return "analytic";
        case Method::Numeric: return "numeric";
        case Method::Both: return "both";
    }
    return "?";
}

bool SweepConfig::wants(Measure m) const { return std::find(measures.begin(), measures.end(), m) != measures.end(); }

void SweepConfig::validate() const {
    if (channels.empty()) throw UsageError("at least one --channel is required");
    if (measures.empty()) throw UsageError("at least one --measure is required");
    if (!(kt_max > 0.0) || !std::isfinite(kt_max)) throw UsageError("--kt-max must be a positive number");
    if (steps < 2) throw UsageError("--steps must be at least 2");
    if (jobs < 1) throw UsageError("--jobs must be at least 1");
    try {
        optimizer.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

SweepConfig parse_config(const std::vector<std::string>& args) {
    SweepConfig cfg;
    CLI::App app{"Entanglement and global discord dynamics of the four-qubit GHZ state under local noise"};
    app.name("qcorr");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::vector<std::string> channels;
    std::vector<std::string> measures;
    std::string method = std::string(method_name(cfg.method));
    std::string out = cfg.output_path.string();

    app.set_config("--config", kDefaultConfigFile, "Read `key = value` settings from this file", false);
    app.add_option("--channel", channels, "Noise channel (repeatable)")
        ->check(CLI::IsMember({"x", "y", "z", "iso"}))
        ->take_all();
    app.add_option("--measure", measures, "Measure to compute (repeatable)")
        ->check(CLI::IsMember({"tau", "gqd", "ppt", "entropy"}))
        ->take_all();
    app.add_option("--kt-max", cfg.kt_max, "Largest kappa*t of the grid")->check(CLI::PositiveNumber);
    app.add_option("--steps", cfg.steps, "Number of grid points (>= 2)")->check(CLI::Range(2, 1 << 24));
    app.add_option("--method", method, "analytic, numeric or both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));
    app.add_option("--grid-theta", cfg.optimizer.grid_theta, "Optimizer grid points in theta")
        ->check(CLI::Range(2, 100000));
    app.add_option("--grid-phi", cfg.optimizer.grid_phi, "Optimizer grid points in phi")
        ->check(CLI::Range(2, 100000));
    app.add_option("--refine", cfg.optimizer.refinement_iterations, "Coordinate-descent sweeps")
        ->check(CLI::Range(0, 1000));
    app.add_option("--out", out, "CSV output path");
    app.add_flag("--plot", cfg.emit_plot, "Also write a plotting script next to the CSV");
    app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 4096));
    app.add_flag("--verify", cfg.verify, "Run the verification suite instead of a sweep");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\nRun with --help for more information.");
    }

    if (!channels.empty()) {
        cfg.channels.clear();
        for (const auto& c : channels) {
            const ChannelKind k = parse_channel(c);
            if (std::find(cfg.channels.begin(), cfg.channels.end(), k) == cfg.channels.end())
                cfg.channels.push_back(k);
        }
    }
    if (!measures.empty()) {
        cfg.measures.clear();
        for (const auto& m : measures) {
            const Measure k = parse_measure(m);
            if (!cfg.wants(k)) cfg.measures.push_back(k);
        }
    }
    cfg.method = parse_method(method);
    cfg.output_path = out;
    cfg.validate();
    return cfg;
}

std::vector<double> kappa_t_grid(double kt_max, int steps) {
    if (steps < 2) throw InvalidArgument("grid needs at least two points");
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = kt_max * i / (steps - 1);
    g.back() = kt_max;
    return g;
}

SweepRecord evaluate_cell(const SweepConfig& cfg, ChannelKind channel, double kappa_t) {
    SweepRecord r;
    r.channel = channel;
    r.kappa_t = kappa_t;
    const bool analytic = cfg.method != Method::Numeric;
    const bool numeric = cfg.method != Method::Analytic;
    const bool need_state = numeric || cfg.wants(Measure::Ppt) || cfg.wants(Measure::Entropy);
    std::optional<DensityMatrix> rho;
    if (need_state) rho = closed_form_state(channel, kappa_t);

    if (cfg.wants(Measure::Tau)) {
        if (analytic) r.tau_analytic = analytic_tau(channel, kappa_t);
        if (numeric) r.tau_numeric = tau_lower_bound(*rho).value;
    }
    if (cfg.wants(Measure::Gqd)) {
        if (analytic) r.gqd_analytic = analytic_gqd(channel, kappa_t);
        if (numeric) r.gqd_numeric = global_discord(*rho, cfg.optimizer).value;
    }
    if (cfg.wants(Measure::Ppt)) r.ppt_min_eig = ppt_min_eigenvalue(*rho, QubitSubset{0});
    if (cfg.wants(Measure::Entropy)) r.entropy = von_neumann_entropy(*rho);
    return r;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = kappa_t_grid(cfg.kt_max, cfg.steps);
    const std::size_t per_channel = grid.size();
    const std::size_t total = cfg.channels.size() * per_channel;
    std::vector<SweepRecord> records(total);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total || failed.load()) return;
            try {
                records[i] = evaluate_cell(cfg, cfg.channels[i / per_channel], grid[i % per_channel]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
                return;
            }
        }
    };

    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), total));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return records;
}

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_text(const std::vector<SweepRecord>& records) {
    std::string s = kCsvHeader;
    s += '\n';
    for (const auto& r : records) {
        s += channel_name(r.channel);
        for (const std::string& f :
             {format_real(r.kappa_t), optional_field(r.tau_analytic), optional_field(r.tau_numeric),
              optional_field(r.gqd_analytic), optional_field(r.gqd_numeric), optional_field(r.ppt_min_eig),
              optional_field(r.entropy)}) {
            s += ',';
            s += f;
        }
        s += '\n';
    }
    return s;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
    if (records.empty()) throw InvalidArgument("emit_csv: no records");
    write_file(path, csv_text(records));
}

std::filesystem::path plot_script_path(const std::filesystem::path& csv_path) {
    std::filesystem::path p = csv_path;
    p.replace_filename(csv_path.stem().string() + "_plot.py");
    return p;
}

std::string plot_script_text(const std::vector<SweepRecord>& records, const std::filesystem::path& csv_path) {
    if (records.empty()) throw InvalidArgument("emit_plot_script: no records");

    struct Panel {
        const char* label;
        std::vector<std::pair<const char*, std::optional<double> SweepRecord::*>> columns;
    };
    const Panel panels[] = {
        {"lower bound tau", {{"tau_analytic", &SweepRecord::tau_analytic}, {"tau_numeric", &SweepRecord::tau_numeric}}},
        {"global quantum discord D", {{"gqd_analytic", &SweepRecord::gqd_analytic}, {"gqd_numeric", &SweepRecord::gqd_numeric}}},
        {"PPT minimum eigenvalue", {{"ppt_min_eig", &SweepRecord::ppt_min_eig}}},
        {"von Neumann entropy (bits)", {{"entropy", &SweepRecord::entropy}}},
    };

    std::vector<ChannelKind> channels;
    for (const auto& r : records)
        if (std::find(channels.begin(), channels.end(), r.channel) == channels.end()) channels.push_back(r.channel);

    std::ostringstream s;
    s << "#!/usr/bin/env python3\n"
         "# Generated by qcorr. Reads the sweep CSV and draws one panel per measure.\n"
         "import csv\n"
         "import os\n"
         "import sys\n\n"
         "import matplotlib\n"
         "matplotlib.use(\"Agg\")\n"
         "import matplotlib.pyplot as plt\n\n"
      << "HERE = os.path.dirname(os.path.abspath(__file__))\n"
      << "CSV = os.path.join(HERE, \"" << csv_path.filename().string() << "\")\n\n"
      << "# (panel, column, channel, style)\n"
      << "CURVES = [\n";
    std::vector<const Panel*> used;
    for (const Panel& p : panels) {
        bool any = false;
        for (const auto& [col, member] : p.columns) {
            const bool numeric = std::string_view(col).ends_with("_numeric");
            for (ChannelKind ch : channels) {
                const bool populated = std::any_of(records.begin(), records.end(), [&](const SweepRecord& r) {
                    return r.channel == ch && (r.*member).has_value();
                });
                if (!populated) continue;
                any = true;
                s << "    (\"" << p.label << "\", \"" << col << "\", \"" << channel_name(ch) << "\", \""
                  << (numeric ? "o" : "-") << "\"),\n";
            }
        }
        if (any) used.push_back(&p);
    }
    s << "]\n\n"
      << "PANELS = [";
    for (std::size_t i = 0; i < used.size(); ++i) s << (i ? ", " : "") << "\"" << used[i]->label << "\"";
    s << "]\n\n"
         "LABELS = {\"x\": \"Pauli-X\", \"y\": \"Pauli-Y\", \"z\": \"Pauli-Z\", \"iso\": \"isotropic\"}\n\n\n"
         "def load(path):\n"
         "    with open(path, newline=\"\") as f:\n"
         "        return list(csv.DictReader(f))\n\n\n"
         "def main():\n"
         "    rows = load(CSV)\n"
         "    fig, axes = plt.subplots(1, len(PANELS), figsize=(5.5 * len(PANELS), 4.2), squeeze=False)\n"
         "    for ax, panel in zip(axes[0], PANELS):\n"
         "        for name, column, channel, style in CURVES:\n"
         "            if name != panel:\n"
         "                continue\n"
         "            pts = [(float(r[\"kappa_t\"]), float(r[column])) for r in rows\n"
         "                   if r[\"channel\"] == channel and r[column] != \"\"]\n"
         "            if not pts:\n"
         "                continue\n"
         "            xs, ys = zip(*pts)\n"
         "            kind = \"numeric\" if column.endswith(\"_numeric\") else \"analytic\"\n"
         "            ax.plot(xs, ys, style, markersize=3, label=f\"{LABELS[channel]} ({kind})\")\n"
         "        ax.set_xlabel(r\"$\\kappa t$\")\n"
         "        ax.set_ylabel(panel)\n"
         "        ax.legend(fontsize=8)\n"
         "    fig.tight_layout()\n"
         "    out = os.path.splitext(CSV)[0] + \".png\"\n"
         "    fig.savefig(out, dpi=150)\n"
         "    print(out)\n"
         "    return 0\n\n\n"
         "if __name__ == \"__main__\":\n"
         "    sys.exit(main())\n";
    return s.str();
}

void emit_plot_script(const std::vector<SweepRecord>& records, const std::filesystem::path& csv_path,
                      const std::filesystem::path& script_path) {
    write_file(script_path, plot_script_text(records, csv_path));
}

}  // namespace qcorr
