#include "rissm/montecarlo.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace rissm {

namespace {

constexpr int kTrialsPerBatch = 4096;
constexpr int kBatchesPerRound = 8;

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

struct BatchResult {
    std::int64_t bit_errors = 0;
    std::int64_t trials = 0;
};

/// One worker's reusable buffers; trials inside a batch share them.
struct TrialWorkspace {
    FadingChannel channel;
    RisProfile commanded;
    RisProfile realized;
    std::vector<std::complex<double>> gains;
};

// Per-trial draw order (fixed for reproducibility): fading links, bit block,
// phase-error perturbation, noise.
BatchResult run_batch(const SimConfig& cfg, const Constellation& cons, double transmit_power,
                      std::uint64_t batch_seed, int trials, TrialWorkspace& ws) {
    Rng rng(batch_seed);
    const int bits = sm_bits_per_symbol(cfg.tx_antennas, cons);
    const double amp = std::sqrt(transmit_power);
    const bool ideal = cfg.phase_error.kind == PhaseErrorSpec::Kind::Ideal;
    ws.gains.resize(cfg.tx_antennas);

    BatchResult out;
    for (int t = 0; t < trials; ++t) {
        sample_fading_into(ws.channel, cfg.ris_elements, cfg.tx_antennas, rng);
        const std::uint32_t block = rng.bit_block(bits);
        const SmSymbol sent = sm_map(block, cfg.tx_antennas, cons);
        align_phases_into(ws.commanded, ws.channel, sent.antenna);
        const RisProfile* realized = &ws.commanded;
        if (!ideal) {
            apply_phase_error_into(ws.realized, ws.commanded, cfg.phase_error, rng);
            realized = &ws.realized;
        }
        const std::complex<double> y =
            amp * composite_gain(ws.channel, *realized, sent.antenna) *
                cons.points[sent.symbol_index] +
            rng.cnormal(1.0);
        for (int n = 1; n <= cfg.tx_antennas; ++n) {
            ws.gains[n - 1] = composite_gain(ws.channel, ws.commanded, n);
        }
        const SmSymbol detected = ml_detect(y, ws.gains, cons, transmit_power);
        out.bit_errors += hamming_distance(sent, detected, cfg.tx_antennas, cons);
    }
    out.trials = trials;
    return out;
}

}  // namespace

void validate_config(const SimConfig& cfg) {
    if (!is_power_of_two(cfg.tx_antennas)) {
        throw std::invalid_argument("SimConfig: tx_antennas must be a power of two");
    }
    if (!is_power_of_two(cfg.mod_order)) {
        throw std::invalid_argument("SimConfig: mod_order must be a power of two");
    }
    if (cfg.tx_antennas * cfg.mod_order < 2) {
        throw std::invalid_argument("SimConfig: need Nt*M >= 2");
    }
    if (cfg.ris_elements < 1) throw std::invalid_argument("SimConfig: ris_elements must be >= 1");
    if (cfg.min_bit_errors < 1) throw std::invalid_argument("SimConfig: min_bit_errors must be >= 1");
    if (cfg.max_trials < 1) throw std::invalid_argument("SimConfig: max_trials must be >= 1");
    if (cfg.phase_error.kind == PhaseErrorSpec::Kind::Uniform && !(cfg.phase_error.k > 0.0)) {
        throw std::invalid_argument("SimConfig: uniform phase error needs k > 0");
    }
    for (double v : cfg.snr_db) {
        if (!std::isfinite(v)) throw std::invalid_argument("SimConfig: snr_db must be finite");
    }
}

std::uint64_t point_stream_seed(std::uint64_t seed, double snr_db) {
    return mix_seed(seed, std::bit_cast<std::uint64_t>(snr_db));
}

BerPoint simulate_point(const SimConfig& cfg, double snr_db, std::uint64_t stream_seed) {
    validate_config(cfg);
    if (!std::isfinite(snr_db)) throw std::invalid_argument("simulate_point: snr_db must be finite");

    const Constellation cons = build_constellation(cfg.scheme, cfg.mod_order);
    const double transmit_power = std::pow(10.0, snr_db / 10.0);
    const int bits_per_trial = sm_bits_per_symbol(cfg.tx_antennas, cons);

    int worker_count = cfg.threads > 0 ? cfg.threads
                                       : static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count < 1) worker_count = 1;
    worker_count = std::min(worker_count, kBatchesPerRound);

    BerPoint point;
    point.snr_db = snr_db;

    // Rounds of kBatchesPerRound fixed-size batches keep the stop decision —
    // and therefore the result — independent of scheduling and thread count.
    std::int64_t next_batch = 0;
    std::int64_t trials_done = 0;
    std::int64_t errors = 0;
    while (errors < cfg.min_bit_errors && trials_done < cfg.max_trials) {
        std::vector<BatchResult> results(kBatchesPerRound);
        std::vector<int> sizes(kBatchesPerRound, 0);
        std::int64_t planned = trials_done;
        for (int b = 0; b < kBatchesPerRound && planned < cfg.max_trials; ++b) {
            sizes[b] = static_cast<int>(
                std::min<std::int64_t>(kTrialsPerBatch, cfg.max_trials - planned));
            planned += sizes[b];
        }

        std::atomic<int> cursor{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]() {
            try {
                TrialWorkspace ws;
                for (int b = cursor.fetch_add(1); b < kBatchesPerRound;
                     b = cursor.fetch_add(1)) {
                    if (sizes[b] == 0) continue;
                    results[b] = run_batch(cfg, cons, transmit_power,
                                           mix_seed(stream_seed, next_batch + b), sizes[b], ws);
                }
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        if (worker_count == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(worker_count);
            for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        if (failure) std::rethrow_exception(failure);

        for (const BatchResult& r : results) {
            errors += r.bit_errors;
            trials_done += r.trials;
        }
        next_batch += kBatchesPerRound;
    }

    point.bit_errors = errors;
    point.bits = trials_done * bits_per_trial;
    point.ber = static_cast<double>(errors) / static_cast<double>(point.bits);
    point.reached_min_errors = errors >= cfg.min_bit_errors;
    return point;
}

BerCurve simulate_curve(const SimConfig& cfg) {
    validate_config(cfg);
    BerCurve curve;
    curve.config = cfg;
    curve.points.reserve(cfg.snr_db.size());
    for (double snr : cfg.snr_db) {
        curve.points.push_back(simulate_point(cfg, snr, point_stream_seed(cfg.seed, snr)));
    }
    return curve;
}

}  // namespace rissm
