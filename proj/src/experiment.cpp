#include "rissm/experiment.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "rissm/analytic.hpp"

namespace rissm {

namespace {

std::string format_row(const char* fmt, ...) {
    char buf[160];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

}  // namespace

AbepCurve analyze_curve(const SimConfig& cfg, int gcq_points) {
    validate_config(cfg);
    const Constellation cons = build_constellation(cfg.scheme, cfg.mod_order);
    AbepCurve curve;
    curve.gcq_points = gcq_points;
    curve.points.reserve(cfg.snr_db.size());
    for (double snr : cfg.snr_db) {
        const double rho = std::pow(10.0, snr / 10.0);
        curve.points.push_back(
            {snr, abep_union_bound(cfg.tx_antennas, cons, cfg.ris_elements, rho, gcq_points)});
    }
    return curve;
}

void write_ber_csv(const BerCurve& curve, std::ostream& os) {
    os << "snr_db,ber,bit_errors,bits,seed,flags\n";
    for (const BerPoint& p : curve.points) {
        os << format_row("%.3f,%.6e,%lld,%lld,%llu,%s\n", p.snr_db, p.ber,
                         static_cast<long long>(p.bit_errors), static_cast<long long>(p.bits),
                         static_cast<unsigned long long>(curve.config.seed),
                         p.reached_min_errors ? "ok" : "low_errors");
    }
}

void write_abep_csv(const AbepCurve& curve, std::ostream& os) {
    os << "snr_db,abep_bound,Q\n";
    for (const AbepPoint& p : curve.points) {
        os << format_row("%.3f,%.9e,%d\n", p.snr_db, p.abep, curve.gcq_points);
    }
}

int ValidateReport::exit_status() const {
    if (all_ok) return 0;
    return ris_elements >= 80 ? 2 : 3;
}

ValidateReport run_validate(const ExperimentSpec& spec) {
    const BerCurve sim = simulate_curve(spec.sim);
    const AbepCurve ana = analyze_curve(spec.sim, spec.gcq_points);

    ValidateReport report;
    report.ris_elements = spec.sim.ris_elements;
    for (std::size_t i = 0; i < sim.points.size(); ++i) {
        ValidatePoint v;
        v.snr_db = sim.points[i].snr_db;
        v.sim = sim.points[i];
        v.abep = ana.points[i].abep;
        v.sigma = std::sqrt(v.sim.ber * (1.0 - v.sim.ber) /
                            static_cast<double>(v.sim.bits));
        v.counted = v.sim.bit_errors >= 100;
        v.gap_sigma = v.sigma > 0.0 ? (v.sim.ber - v.abep) / v.sigma : 0.0;
        v.ok = v.counted && std::abs(v.gap_sigma) <= 3.0;
        if (v.counted && !v.ok) report.all_ok = false;
        report.points.push_back(v);
    }
    return report;
}

void write_validate_report(const ValidateReport& report, std::ostream& os) {
    os << "snr_db      sim_ber      abep_bound   errors   gap_sigma  verdict\n";
    for (const ValidatePoint& v : report.points) {
        const char* verdict = !v.counted ? "low_errors" : (v.ok ? "ok" : "diverged");
        os << format_row("%8.3f  %.5e  %.5e  %7lld  %+9.2f  %s\n", v.snr_db, v.sim.ber,
                         v.abep, static_cast<long long>(v.sim.bit_errors), v.gap_sigma,
                         verdict);
    }
    if (report.points.empty()) {
        os << "(empty grid)\n";
    } else if (report.all_ok) {
        os << "validate: all counted points within 3 sigma\n";
    } else if (report.ris_elements >= 80) {
        os << "validate: divergence at L >= 80 (CLT regime) - check configuration\n";
    } else {
        os << "validate: divergence detected; expected for L < 80 (CLT not applicable)\n";
    }
}

std::vector<double> snr_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("snr_grid: step must be > 0");
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
    return grid;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config file: " + path);
    auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r");
        const auto end = s.find_last_not_of(" \t\r");
        return begin == std::string::npos ? std::string{} : s.substr(begin, end - begin + 1);
    };
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        }
        pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return pairs;
}

std::vector<PresetCurve> figure_presets(int figure, const ExperimentSpec& base) {
    std::vector<PresetCurve> curves;
    switch (figure) {
        case 2:
            for (int elements : {10, 20, 40, 80, 160}) {
                PresetCurve c{"L" + std::to_string(elements), base};
                c.spec.sim.tx_antennas = 2;
                c.spec.sim.mod_order = 1;
                c.spec.sim.scheme = ModScheme::Psk;
                c.spec.sim.ris_elements = elements;
                c.spec.sim.phase_error = PhaseErrorSpec::ideal();
                curves.push_back(std::move(c));
            }
            break;
        case 3:
            for (int order : {2, 4, 8}) {
                PresetCurve c{"M" + std::to_string(order), base};
                c.spec.sim.tx_antennas = 2;
                c.spec.sim.mod_order = order;
                c.spec.sim.scheme = ModScheme::Psk;  // the sweep spans non-square orders
                c.spec.sim.ris_elements = 100;
                c.spec.sim.phase_error = PhaseErrorSpec::ideal();
                curves.push_back(std::move(c));
            }
            break;
        case 4:
            for (int antennas : {4, 16}) {
                PresetCurve c{"Nt" + std::to_string(antennas), base};
                c.spec.sim.tx_antennas = antennas;
                c.spec.sim.mod_order = 2;
                c.spec.sim.scheme = ModScheme::Psk;
                c.spec.sim.ris_elements = 100;
                c.spec.sim.phase_error = PhaseErrorSpec::ideal();
                curves.push_back(std::move(c));
            }
            break;
        case 5: {
            auto make = [&base](const std::string& label, PhaseErrorSpec err) {
                PresetCurve c{label, base};
                c.spec.sim.tx_antennas = 2;
                c.spec.sim.mod_order = 2;
                c.spec.sim.scheme = ModScheme::Psk;
                c.spec.sim.ris_elements = 100;
                c.spec.sim.phase_error = err;
                c.spec.mode = RunMode::Simulate;  // no phase-error analysis model
                return c;
            };
            curves.push_back(make("ideal", PhaseErrorSpec::ideal()));
            for (double k : {2.0, 4.0, 8.0}) {
                curves.push_back(make("k" + std::to_string(static_cast<int>(k)),
                                      PhaseErrorSpec::uniform(k)));
            }
            curves.push_back(make("random", PhaseErrorSpec::random()));
            break;
        }
        default:
            throw std::invalid_argument("figure_presets: figure must be 2, 3, 4, or 5");
    }
    return curves;
}

}  // namespace rissm
