#ifndef RISSM_MONTECARLO_HPP
#define RISSM_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "rissm/channel.hpp"
#include "rissm/modem.hpp"

namespace rissm {

/// Parameters of a bit-error-rate sweep. Noise convention: N0 = 1 and
/// transmit power P_t = 10^(snr_db/10), so snr_db is the average SNR
/// rho = P_t/N0.
struct SimConfig {
    int tx_antennas = 2;     // N_t, power of two
    int mod_order = 2;       // M, power of two
    ModScheme scheme = ModScheme::Psk;
    int ris_elements = 100;  // L
    PhaseErrorSpec phase_error{};
    std::vector<double> snr_db;
    std::int64_t min_bit_errors = 100;
    std::int64_t max_trials = 1'000'000;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency; results do not depend on it
};

/// Throws invalid_argument when a SimConfig violates its invariants.
void validate_config(const SimConfig& cfg);

struct BerPoint {
    double snr_db = 0.0;
    double ber = 0.0;
    std::int64_t bit_errors = 0;
    std::int64_t bits = 0;
    bool reached_min_errors = false;  // false: stopped at the max_trials cap
};

struct BerCurve {
    SimConfig config;
    std::vector<BerPoint> points;
};

/// Stream seed for one SNR point, derived from (seed, snr value) so that
/// estimates are independent of the point's position in the sweep.
std::uint64_t point_stream_seed(std::uint64_t seed, double snr_db);

/// Estimate the BER at one SNR point. Trials run until min_bit_errors have
/// accumulated or max_trials is reached. Each trial draws a fresh channel,
/// a random bit block, aligns the RIS to the active antenna, perturbs the
/// realized profile per the error model, and feeds the exact ML detector
/// (candidate gains computed from the commanded profile). Deterministic for
/// a given stream seed, independent of the thread count.
BerPoint simulate_point(const SimConfig& cfg, double snr_db, std::uint64_t stream_seed);

/// simulate_point over the whole snr_db grid with per-point substreams.
BerCurve simulate_curve(const SimConfig& cfg);

}  // namespace rissm

#endif
