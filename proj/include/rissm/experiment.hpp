#ifndef RISSM_EXPERIMENT_HPP
#define RISSM_EXPERIMENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rissm/montecarlo.hpp"

namespace rissm {

enum class RunMode { Simulate, Analyze, Both };

/// One experiment: a SimConfig plus the analysis/quadrature and output knobs.
struct ExperimentSpec {
    RunMode mode = RunMode::Both;
    SimConfig sim;
    int gcq_points = 64;
    std::string out;  // file path; directory for figure presets; empty = stdout
};

struct AbepPoint {
    double snr_db = 0.0;
    double abep = 0.0;
};

struct AbepCurve {
    std::vector<AbepPoint> points;
    int gcq_points = 64;
};

/// Union-bound ABEP at every SNR point of the config (ideal phases).
AbepCurve analyze_curve(const SimConfig& cfg, int gcq_points);

/// CSV: header "snr_db,ber,bit_errors,bits,seed,flags", one row per point,
/// LF line endings, fixed formats (%.3f snr, %.6e ber). flags is "ok" when
/// the point accumulated min_bit_errors, else "low_errors".
void write_ber_csv(const BerCurve& curve, std::ostream& os);

/// CSV: header "snr_db,abep_bound,Q" with %.3f snr and %.9e bound.
void write_abep_csv(const AbepCurve& curve, std::ostream& os);

struct ValidatePoint {
    double snr_db = 0.0;
    BerPoint sim;
    double abep = 0.0;
    double sigma = 0.0;      // binomial standard error of the simulated BER
    double gap_sigma = 0.0;  // (sim - abep) / sigma
    bool counted = false;    // >= 100 errors, so the gap test applies
    bool ok = false;         // counted and |gap| <= 3
};

struct ValidateReport {
    std::vector<ValidatePoint> points;
    int ris_elements = 0;
    bool all_ok = true;  // every counted point within 3 sigma

    /// 0 = pass; 3 = divergence with L < 80 (expected CLT failure,
    /// informational); 2 = divergence at L >= 80.
    int exit_status() const;
};

/// Simulate and analyze the same grid and compare point-by-point.
ValidateReport run_validate(const ExperimentSpec& spec);

void write_validate_report(const ValidateReport& report, std::ostream& os);

/// One curve of a figure preset: a label (used in output file names) and the
/// fully-parameterized spec.
struct PresetCurve {
    std::string label;
    ExperimentSpec spec;
};

/// Parameter sets for the reproduction presets; `base` supplies everything
/// the preset does not pin (SNR grid, seed, trial budget, output directory).
/// 2: Nt=2, M=1, L in {10,20,40,80,160}.  3: Nt=2, L=100, M in {2,4,8}.
/// 4: M=2, L=100, Nt in {4,16}.  5: Nt=2, M=2, L=100, phase error
/// ideal / uniform k in {2,4,8} / random (simulation only).
std::vector<PresetCurve> figure_presets(int figure, const ExperimentSpec& base);

/// Evenly spaced SNR grid, inclusive of stop up to rounding.
std::vector<double> snr_grid(double start, double stop, double step);

/// Read a flat key=value config file: one pair per line, '#' starts a
/// comment, blank lines ignored, whitespace around keys/values trimmed.
/// Pairs are returned in file order (later duplicates override earlier ones
/// when applied). Throws invalid_argument on unreadable files or lines
/// without '='.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace rissm

#endif
