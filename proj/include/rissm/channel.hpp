#ifndef RISSM_CHANNEL_HPP
#define RISSM_CHANNEL_HPP

#include <complex>
#include <optional>
#include <vector>

#include "rissm/rng.hpp"

namespace rissm {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

/// One Rayleigh-fading realization of the BS->RIS links (L x N_t matrix) and
/// the RIS->UE links (length-L vector). Every complex link coefficient is
/// unit-variance circularly symmetric Gaussian, i.e. amplitudes satisfy
/// E[amp] = sqrt(pi)/2 and E[amp^2] = 1, phases are uniform on [0, 2*pi).
/// Antennas are indexed 1..tx_antennas throughout the public API.
struct FadingChannel {
    int ris_elements = 0;  // L
    int tx_antennas = 0;   // N_t
    std::vector<double> h_amp;    // L x N_t, element-major
    std::vector<double> h_phase;  // same layout
    std::vector<double> g_amp;    // L
    std::vector<double> g_phase;  // L

    std::size_t link_index(int element, int antenna) const {
        return static_cast<std::size_t>(element) * tx_antennas + (antenna - 1);
    }
    double h_amp_at(int element, int antenna) const { return h_amp[link_index(element, antenna)]; }
    double h_phase_at(int element, int antenna) const { return h_phase[link_index(element, antenna)]; }
};

/// RIS phase perturbation model. Uniform(k) adds i.i.d. U[-pi/k, pi/k] to the
/// configured shifts; Random discards them for fresh U[0, 2*pi) draws.
struct PhaseErrorSpec {
    enum class Kind { Ideal, Uniform, Random };
    Kind kind = Kind::Ideal;
    double k = 0.0;

    static PhaseErrorSpec ideal() { return {}; }
    static PhaseErrorSpec uniform(double k);
    static PhaseErrorSpec random() { return {Kind::Random, 0.0}; }
};

/// The L reflection phase shifts, all in [0, 2*pi). `aligned_to` records the
/// antenna the profile was phase-aligned for (absent for random profiles);
/// `error_model` records the perturbation that produced it. Reflection
/// amplitude per element is one.
struct RisProfile {
    std::vector<double> theta;
    std::optional<int> aligned_to;
    PhaseErrorSpec error_model{};
};

/// Draw a fresh channel realization. Draw order is fixed (documented for
/// reproducibility): for each element, the N_t BS->RIS links as
/// (amplitude, phase) pairs, then the RIS->UE link.
FadingChannel sample_fading(int ris_elements, int tx_antennas, Rng& rng);

/// Same draws as sample_fading but reuses the buffers of `ch`.
void sample_fading_into(FadingChannel& ch, int ris_elements, int tx_antennas, Rng& rng);

/// Phase-align the RIS to the given antenna: theta[l] = g_phase[l] +
/// h_phase[l][antenna] (mod 2*pi), which makes the composite gain the real
/// nonnegative amplitude sum.
RisProfile align_phases(const FadingChannel& ch, int antenna);
void align_phases_into(RisProfile& profile, const FadingChannel& ch, int antenna);

/// Apply a perturbation model to a profile. Ideal returns it unchanged.
RisProfile apply_phase_error(const RisProfile& profile, const PhaseErrorSpec& spec, Rng& rng);
void apply_phase_error_into(RisProfile& out, const RisProfile& profile,
                            const PhaseErrorSpec& spec, Rng& rng);

/// Composite BS -> RIS -> UE gain for one antenna:
/// sum_l h_amp[l][antenna] * g_amp[l] * exp(j*(theta[l] - g_phase[l] - h_phase[l][antenna])).
std::complex<double> composite_gain(const FadingChannel& ch, const RisProfile& profile,
                                    int antenna);

/// Density of the difference of two alignment angles: triangular on
/// [-2*pi, 2*pi] with peak 1/(2*pi) at zero.
double phase_residual_pdf(double phi);

}  // namespace rissm

#endif
