// rissm - RIS-assisted spatial modulation link simulator and ABEP evaluator.
//
// Subcommands:
//   simulate   Monte Carlo BER sweep -> CSV
//   analyze    union-bound ABEP sweep -> CSV
//   validate   run both on one grid and compare point-by-point
//   reproduce  parameter presets for the standard figures (--figure 2|3|4|5)

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rissm/experiment.hpp"

namespace {

struct CliOptions {
    rissm::ExperimentSpec spec;
    double snr_start = -10.0;
    double snr_stop = 30.0;
    double snr_step = 2.0;
    std::string mod = "psk";
    std::string phase_error = "ideal";
    std::string config_path;
    int figure = 0;
};

rissm::PhaseErrorSpec parse_phase_error(const std::string& text) {
    if (text == "ideal") return rissm::PhaseErrorSpec::ideal();
    if (text == "random") return rissm::PhaseErrorSpec::random();
    if (text.rfind("uniform:", 0) == 0) {
        const double k = std::stod(text.substr(8));
        return rissm::PhaseErrorSpec::uniform(k);
    }
    throw CLI::ValidationError("--phase-error", "expected ideal, uniform:<k>, or random");
}

// Config-file values become defaults; explicit flags override them because
// CLI11 parses afterwards.
void apply_config_file(const std::string& path, CliOptions& opt) {
    for (const auto& [key, value] : rissm::read_config_file(path)) {
        if (key == "nt") opt.spec.sim.tx_antennas = std::stoi(value);
        else if (key == "mod") opt.mod = value;
        else if (key == "m") opt.spec.sim.mod_order = std::stoi(value);
        else if (key == "ris-elements") opt.spec.sim.ris_elements = std::stoi(value);
        else if (key == "snr-start") opt.snr_start = std::stod(value);
        else if (key == "snr-stop") opt.snr_stop = std::stod(value);
        else if (key == "snr-step") opt.snr_step = std::stod(value);
        else if (key == "seed") opt.spec.sim.seed = std::stoull(value);
        else if (key == "min-errors") opt.spec.sim.min_bit_errors = std::stoll(value);
        else if (key == "max-trials") opt.spec.sim.max_trials = std::stoll(value);
        else if (key == "gcq-nodes") opt.spec.gcq_points = std::stoi(value);
        else if (key == "phase-error") opt.phase_error = value;
        else if (key == "threads") opt.spec.sim.threads = std::stoi(value);
        else if (key == "out") opt.spec.out = value;
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

// The config file must be loaded before CLI11 binds flag values, so --config
// is located by a pre-scan of argv.
std::string find_config_argument(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--nt", opt.spec.sim.tx_antennas, "Transmit antennas (power of two)")
        ->capture_default_str();
    cmd->add_option("--mod", opt.mod, "Modulation scheme: psk or qam")
        ->check(CLI::IsMember({"psk", "qam"}))
        ->capture_default_str();
    cmd->add_option("--m", opt.spec.sim.mod_order, "Modulation order (power of two)")
        ->capture_default_str();
    cmd->add_option("--ris-elements", opt.spec.sim.ris_elements, "RIS elements L")
        ->capture_default_str();
    cmd->add_option("--snr-start", opt.snr_start, "Sweep start, dB")->capture_default_str();
    cmd->add_option("--snr-stop", opt.snr_stop, "Sweep stop, dB")->capture_default_str();
    cmd->add_option("--snr-step", opt.snr_step, "Sweep step, dB")->capture_default_str();
    cmd->add_option("--seed", opt.spec.sim.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--min-errors", opt.spec.sim.min_bit_errors,
                    "Bit errors to accumulate per point")
        ->capture_default_str();
    cmd->add_option("--max-trials", opt.spec.sim.max_trials, "Trial cap per point")
        ->capture_default_str();
    cmd->add_option("--gcq-nodes", opt.spec.gcq_points, "Quadrature nodes Q")
        ->capture_default_str();
    cmd->add_option("--phase-error", opt.phase_error,
                    "Phase model: ideal, uniform:<k>, or random")
        ->capture_default_str();
    cmd->add_option("--threads", opt.spec.sim.threads, "Worker threads (0 = auto)")
        ->capture_default_str();
    cmd->add_option("--out", opt.spec.out, "Output CSV path (directory for reproduce)");
    cmd->add_option("--config", opt.config_path,
                    "Flat key=value config file; flags override its values");
}

void finalize(CliOptions& opt) {
    opt.spec.sim.scheme = opt.mod == "qam" ? rissm::ModScheme::Qam : rissm::ModScheme::Psk;
    opt.spec.sim.phase_error = parse_phase_error(opt.phase_error);
    opt.spec.sim.snr_db = rissm::snr_grid(opt.snr_start, opt.snr_stop, opt.snr_step);
}

int write_file_or_stdout(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return 2;
    }
    os << payload;
    if (!os.flush()) {
        std::cerr << "error: write to " << path << " failed\n";
        return 2;
    }
    return 0;
}

int do_simulate(const rissm::ExperimentSpec& spec) {
    const rissm::BerCurve curve = rissm::simulate_curve(spec.sim);
    std::ostringstream os;
    rissm::write_ber_csv(curve, os);
    return write_file_or_stdout(spec.out, os.str());
}

int do_analyze(const rissm::ExperimentSpec& spec) {
    const rissm::AbepCurve curve = rissm::analyze_curve(spec.sim, spec.gcq_points);
    std::ostringstream os;
    rissm::write_abep_csv(curve, os);
    return write_file_or_stdout(spec.out, os.str());
}

int do_validate(const rissm::ExperimentSpec& spec) {
    const rissm::ValidateReport report = rissm::run_validate(spec);
    std::ostringstream os;
    rissm::write_validate_report(report, os);
    if (!spec.out.empty()) {
        const int rc = write_file_or_stdout(spec.out, os.str());
        if (rc != 0) return rc;
    }
    std::cout << os.str();
    return report.exit_status();
}

int do_reproduce(const CliOptions& opt) {
    namespace fs = std::filesystem;
    const fs::path dir = opt.spec.out.empty() ? fs::path("fig" + std::to_string(opt.figure))
                                              : fs::path(opt.spec.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << dir << ": " << ec.message() << "\n";
        return 2;
    }
    const auto curves = rissm::figure_presets(opt.figure, opt.spec);
    for (const rissm::PresetCurve& c : curves) {
        const std::string stem = "fig" + std::to_string(opt.figure) + "_" + c.label;
        if (c.spec.mode != rissm::RunMode::Analyze) {
            const rissm::BerCurve curve = rissm::simulate_curve(c.spec.sim);
            std::ostringstream os;
            rissm::write_ber_csv(curve, os);
            const int rc = write_file_or_stdout((dir / (stem + "_sim.csv")).string(), os.str());
            if (rc != 0) return rc;
        }
        if (c.spec.mode != rissm::RunMode::Simulate) {
            const rissm::AbepCurve curve = rissm::analyze_curve(c.spec.sim, c.spec.gcq_points);
            std::ostringstream os;
            rissm::write_abep_csv(curve, os);
            const int rc = write_file_or_stdout((dir / (stem + "_abep.csv")).string(), os.str());
            if (rc != 0) return rc;
        }
        std::cerr << "reproduce: wrote " << stem << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted spatial modulation link simulator"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo BER sweep");
    CLI::App* ana = app.add_subcommand("analyze", "Union-bound ABEP sweep");
    CLI::App* val = app.add_subcommand("validate", "Compare simulation against analysis");
    CLI::App* rep = app.add_subcommand("reproduce", "Run a figure preset");
    for (CLI::App* cmd : {sim, ana, val, rep}) add_common_options(cmd, opt);
    rep->add_option("--figure", opt.figure, "Figure preset: 2, 3, 4, or 5")
        ->required()
        ->check(CLI::IsMember({2, 3, 4, 5}));

    try {
        const std::string config = find_config_argument(argc, argv);
        if (!config.empty()) apply_config_file(config, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI11_PARSE(app, argc, argv);

    try {
        finalize(opt);
        if (sim->parsed()) return do_simulate(opt.spec);
        if (ana->parsed()) return do_analyze(opt.spec);
        if (val->parsed()) return do_validate(opt.spec);
        return do_reproduce(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
