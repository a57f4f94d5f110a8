#include "rissm/modem.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rissm {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(int v) { return std::countr_zero(static_cast<unsigned>(v)); }

std::uint32_t gray_encode(std::uint32_t v) { return v ^ (v >> 1); }

}  // namespace

Constellation build_constellation(ModScheme scheme, int order) {
    if (!is_power_of_two(order)) {
        throw std::invalid_argument("build_constellation: order must be a power of two");
    }
    Constellation c;
    c.scheme = scheme;
    c.order = order;
    c.bits_per_symbol = log2_exact(order);
    c.points.resize(order);
    c.labels.resize(order);

    if (scheme == ModScheme::Psk) {
        for (int m = 0; m < order; ++m) {
            const double phi = 2.0 * std::numbers::pi * m / order;
            c.points[m] = {std::cos(phi), std::sin(phi)};
            c.labels[m] = gray_encode(static_cast<std::uint32_t>(m));
        }
    } else {
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
        if (side * side != order || order < 4) {
            throw std::invalid_argument(
                "build_constellation: QAM order must be a square power of two (4, 16, 64)");
        }
        // Mean power of the unscaled {+-1, +-3, ...}^2 grid is 2*(side^2-1)/3.
        const double scale = 1.0 / std::sqrt(2.0 * (side * side - 1) / 3.0);
        const int axis_bits = c.bits_per_symbol / 2;
        for (int i = 0; i < side; ++i) {
            for (int q = 0; q < side; ++q) {
                const int m = i * side + q;
                c.points[m] = {scale * (2 * i - (side - 1)), scale * (2 * q - (side - 1))};
                c.labels[m] = (gray_encode(static_cast<std::uint32_t>(i)) << axis_bits) |
                              gray_encode(static_cast<std::uint32_t>(q));
            }
        }
    }

    c.index_of_label.assign(order, -1);
    for (int m = 0; m < order; ++m) c.index_of_label[c.labels[m]] = m;
    return c;
}

int sm_bits_per_symbol(int tx_antennas, const Constellation& c) {
    if (!is_power_of_two(tx_antennas)) {
        throw std::invalid_argument("sm_bits_per_symbol: tx_antennas must be a power of two");
    }
    return log2_exact(tx_antennas) + c.bits_per_symbol;
}

SmSymbol sm_map(std::uint32_t bits, int tx_antennas, const Constellation& c) {
    const int total = sm_bits_per_symbol(tx_antennas, c);
    if (total < 32 && (bits >> total) != 0) {
        throw std::invalid_argument("sm_map: bit block wider than log2(Nt*M)");
    }
    const int antenna_bits = log2_exact(tx_antennas);
    const std::uint32_t label = bits >> antenna_bits;
    const std::uint32_t antenna_value = bits & ((1u << antenna_bits) - 1u);
    SmSymbol sym;
    sym.antenna = 1 + static_cast<int>(antenna_value);
    sym.symbol_index = c.index_of_label[label];
    return sym;
}

std::uint32_t sm_demap(const SmSymbol& sym, int tx_antennas, const Constellation& c) {
    const int antenna_bits = log2_exact(tx_antennas);
    return (c.labels[sym.symbol_index] << antenna_bits) |
           static_cast<std::uint32_t>(sym.antenna - 1);
}

SmSymbol ml_detect(std::complex<double> y, std::span<const std::complex<double>> gains,
                   const Constellation& c, double transmit_power) {
    if (c.points.empty()) throw std::invalid_argument("ml_detect: empty constellation");
    if (gains.empty()) throw std::invalid_argument("ml_detect: no candidate gains");
    const double amp = std::sqrt(transmit_power);
    SmSymbol best;
    double best_metric = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= static_cast<int>(gains.size()); ++n) {
        const std::complex<double> scaled = amp * gains[n - 1];
        for (int m = 0; m < c.order; ++m) {
            const double metric = std::norm(y - scaled * c.points[m]);
            if (metric < best_metric) {
                best_metric = metric;
                best = {n, m};
            }
        }
    }
    return best;
}

int hamming_distance(const SmSymbol& a, const SmSymbol& b, int tx_antennas,
                     const Constellation& c) {
    return std::popcount(sm_demap(a, tx_antennas, c) ^ sm_demap(b, tx_antennas, c));
}

}  // namespace rissm
