#ifndef RISSM_ANALYTIC_HPP
#define RISSM_ANALYTIC_HPP

#include <array>
#include <complex>

#include "rissm/modem.hpp"

namespace rissm {

/// Gaussian moments of the aligned composite gain xi = sum_l alpha_l*beta_l
/// (central limit approximation over the L elements):
/// mean = L*pi/4, variance = L*(16 - pi^2)/16.
struct XiMoments {
    double mean = 0.0;
    double variance = 0.0;
};

XiMoments xi_moments(int ris_elements);

/// MGF of xi^2 for xi ~ N(mean, variance):
/// (1 - 2*x*var)^(-1/2) * exp(x*mean^2 / (1 - 2*x*var)).
/// Domain: 1 - 2*x*var > 0 (always holds for x <= 0); throws domain_error at
/// or beyond the pole.
double mgf_gain_square(double x, const XiMoments& m);

/// Pairwise error probability conditioned on the two composite gains:
/// Q(sqrt(rho * |g_true*s - g_cross*s_hat|^2 / 2)).
double cpep(std::complex<double> g_true, std::complex<double> g_cross,
            std::complex<double> s, std::complex<double> s_hat, double rho);

/// Mean vector and covariance matrix of the decision statistic pair
/// (gamma_re, gamma_im) for a (s, s_hat) hypothesis pair under the CLT; the
/// quadratic-form matrix A is the 2x2 identity.
struct MomentSet {
    std::array<double, 2> mu{};
    std::array<std::array<double, 2>, 2> v{};

    static constexpr std::array<std::array<double, 2>, 2> quad_form{{{1.0, 0.0}, {0.0, 1.0}}};
};

MomentSet pair_moments(std::complex<double> s, std::complex<double> s_hat, int ris_elements);

/// MGF of the Gaussian quadratic form z^T A z, z ~ N(mu, V), A = I:
/// det(I - 2xAV)^(-1/2) * exp(-mu^T (I - (I-2xAV)^(-1)) V^(-1) mu / 2),
/// evaluated with explicit 2x2 determinants/adjugates. Throws domain_error
/// for singular V or singular/negative-determinant I - 2xAV.
double mgf_quadratic_form(double x, const MomentSet& m);

/// Average PEP over the channel for a correct antenna decision (same antenna,
/// wrong symbol), closed-form Chebyshev sum with gcq_points nodes.
double upep_correct_antenna(std::complex<double> s, std::complex<double> s_hat, double rho,
                            int ris_elements, int gcq_points);

/// Average PEP over the channel for a wrong antenna decision, via the
/// quadratic-form MGF; closed-form Chebyshev sum with gcq_points nodes.
double upep_cross_antenna(std::complex<double> s, std::complex<double> s_hat, double rho,
                          int ris_elements, int gcq_points);

/// Union upper bound on the average bit error probability: Hamming-weighted
/// sum of pairwise UPEPs over all ordered (antenna, symbol) hypothesis pairs,
/// normalized by N_t*M*log2(N_t*M). Exact (not just a bound) for N_t=2, M=1.
double abep_union_bound(int tx_antennas, const Constellation& c, int ris_elements,
                        double rho, int gcq_points);

}  // namespace rissm

#endif
