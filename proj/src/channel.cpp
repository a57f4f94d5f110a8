#include "rissm/channel.hpp"

#include <stdexcept>

namespace rissm {

PhaseErrorSpec PhaseErrorSpec::uniform(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("PhaseErrorSpec: k must be > 0");
    return {Kind::Uniform, k};
}

void sample_fading_into(FadingChannel& ch, int ris_elements, int tx_antennas, Rng& rng) {
    if (ris_elements < 1 || tx_antennas < 1) {
        throw std::invalid_argument("sample_fading: dimensions must be >= 1");
    }
    ch.ris_elements = ris_elements;
    ch.tx_antennas = tx_antennas;
    const std::size_t links = static_cast<std::size_t>(ris_elements) * tx_antennas;
    ch.h_amp.resize(links);
    ch.h_phase.resize(links);
    ch.g_amp.resize(ris_elements);
    ch.g_phase.resize(ris_elements);
    std::size_t i = 0;
    for (int l = 0; l < ris_elements; ++l) {
        for (int n = 0; n < tx_antennas; ++n, ++i) {
            ch.h_amp[i] = rng.rayleigh_unit();
            ch.h_phase[i] = rng.angle();
        }
        ch.g_amp[l] = rng.rayleigh_unit();
        ch.g_phase[l] = rng.angle();
    }
}

FadingChannel sample_fading(int ris_elements, int tx_antennas, Rng& rng) {
    FadingChannel ch;
    sample_fading_into(ch, ris_elements, tx_antennas, rng);
    return ch;
}

void align_phases_into(RisProfile& profile, const FadingChannel& ch, int antenna) {
    if (antenna < 1 || antenna > ch.tx_antennas) {
        throw std::out_of_range("align_phases: antenna index out of range");
    }
    profile.theta.resize(ch.ris_elements);
    for (int l = 0; l < ch.ris_elements; ++l) {
        profile.theta[l] = wrap_angle(ch.g_phase[l] + ch.h_phase_at(l, antenna));
    }
    profile.aligned_to = antenna;
    profile.error_model = PhaseErrorSpec::ideal();
}

RisProfile align_phases(const FadingChannel& ch, int antenna) {
    RisProfile profile;
    align_phases_into(profile, ch, antenna);
    return profile;
}

void apply_phase_error_into(RisProfile& out, const RisProfile& profile,
                            const PhaseErrorSpec& spec, Rng& rng) {
    if (spec.kind == PhaseErrorSpec::Kind::Uniform && !(spec.k > 0.0)) {
        throw std::invalid_argument("apply_phase_error: k must be > 0");
    }
    if (&out != &profile) out = profile;
    switch (spec.kind) {
        case PhaseErrorSpec::Kind::Ideal:
            return;
        case PhaseErrorSpec::Kind::Uniform: {
            const double half = std::numbers::pi / spec.k;
            for (auto& t : out.theta) {
                t = wrap_angle(t + rng.uniform(-half, half));
            }
            break;
        }
        case PhaseErrorSpec::Kind::Random:
            for (auto& t : out.theta) t = rng.angle();
            out.aligned_to.reset();
            break;
    }
    out.error_model = spec;
}

RisProfile apply_phase_error(const RisProfile& profile, const PhaseErrorSpec& spec, Rng& rng) {
    RisProfile out;
    apply_phase_error_into(out, profile, spec, rng);
    return out;
}

std::complex<double> composite_gain(const FadingChannel& ch, const RisProfile& profile,
                                    int antenna) {
    if (antenna < 1 || antenna > ch.tx_antennas) {
        throw std::out_of_range("composite_gain: antenna index out of range");
    }
    if (static_cast<int>(profile.theta.size()) != ch.ris_elements) {
        throw std::invalid_argument("composite_gain: profile/channel dimension mismatch");
    }
    // Fast path for a profile aligned to this antenna: the exponents cancel
    // exactly, so the result is the real amplitude sum.
    if (profile.aligned_to == antenna &&
        profile.error_model.kind == PhaseErrorSpec::Kind::Ideal) {
        double acc = 0.0;
        for (int l = 0; l < ch.ris_elements; ++l) {
            acc += ch.h_amp_at(l, antenna) * ch.g_amp[l];
        }
        return {acc, 0.0};
    }
    std::complex<double> acc{0.0, 0.0};
    for (int l = 0; l < ch.ris_elements; ++l) {
        const double amp = ch.h_amp_at(l, antenna) * ch.g_amp[l];
        const double phase = profile.theta[l] - ch.g_phase[l] - ch.h_phase_at(l, antenna);
        acc += std::polar(amp, phase);
    }
    return acc;
}

double phase_residual_pdf(double phi) {
    const double a = std::abs(phi);
    if (a > two_pi) return 0.0;
    return (two_pi - a) / (4.0 * std::numbers::pi * std::numbers::pi);
}

}  // namespace rissm
