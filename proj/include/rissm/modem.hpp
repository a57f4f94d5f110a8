#ifndef RISSM_MODEM_HPP
#define RISSM_MODEM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace rissm {

enum class ModScheme { Psk, Qam };

/// Unit-average-power constellation with Gray bit labels.
/// PSK: points exp(j*2*pi*m/M), ring-Gray labels. QAM: square grids
/// (M in {4, 16, 64}) with per-axis Gray labels, scaled to unit mean power.
/// M = 1 (the SSK degenerate case) is the single point {1} with an empty
/// label.
struct Constellation {
    ModScheme scheme = ModScheme::Psk;
    int order = 0;                               // M
    std::vector<std::complex<double>> points;    // symbol m
    std::vector<std::uint32_t> labels;           // Gray label of symbol m
    std::vector<int> index_of_label;             // inverse of labels
    int bits_per_symbol = 0;                     // log2(M)
};

Constellation build_constellation(ModScheme scheme, int order);

/// A spatial-modulation symbol: active antenna (1-based) plus constellation
/// index; carries log2(N_t) + log2(M) bits.
struct SmSymbol {
    int antenna = 1;
    int symbol_index = 0;

    friend bool operator==(const SmSymbol&, const SmSymbol&) = default;
};

/// Bits carried per SM symbol for a given antenna count and constellation.
int sm_bits_per_symbol(int tx_antennas, const Constellation& c);

/// Map a bit block to an SM symbol. Reading the block MSB-first, the first
/// log2(M) bits are the constellation label and the remaining log2(N_t) bits
/// select the antenna in natural binary (antenna = 1 + value).
SmSymbol sm_map(std::uint32_t bits, int tx_antennas, const Constellation& c);

/// Exact inverse of sm_map.
std::uint32_t sm_demap(const SmSymbol& sym, int tx_antennas, const Constellation& c);

/// Exhaustive ML detection: argmin over all (antenna, symbol) hypotheses of
/// |y - sqrt(transmit_power) * gains[antenna-1] * point|^2, ties broken
/// toward the smallest (antenna, symbol) pair.
SmSymbol ml_detect(std::complex<double> y, std::span<const std::complex<double>> gains,
                   const Constellation& c, double transmit_power);

/// Number of differing bits between the labels of two SM symbols.
int hamming_distance(const SmSymbol& a, const SmSymbol& b, int tx_antennas,
                     const Constellation& c);

}  // namespace rissm

#endif
