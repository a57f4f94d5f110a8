#include "rissm/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rissm/quadrature.hpp"

namespace rissm {

namespace {

constexpr double pi = std::numbers::pi;

void check_common(double rho, int ris_elements, int gcq_points) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("upep: rho must be finite and >= 0");
    }
    if (ris_elements < 1) throw std::invalid_argument("upep: ris_elements must be >= 1");
    if (gcq_points < 1) throw std::invalid_argument("upep: gcq_points must be >= 1");
}

struct Mat2 {
    double a, b, c, d;  // [[a, b], [c, d]]

    double det() const { return a * d - b * c; }
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    Mat2 scaled(double s) const { return {s * a, s * b, s * c, s * d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

}  // namespace

XiMoments xi_moments(int ris_elements) {
    if (ris_elements < 1) throw std::invalid_argument("xi_moments: ris_elements must be >= 1");
    return {ris_elements * pi / 4.0, ris_elements * (16.0 - pi * pi) / 16.0};
}

double mgf_gain_square(double x, const XiMoments& m) {
    const double denom = 1.0 - 2.0 * x * m.variance;
    if (!(denom > 0.0)) {
        throw std::domain_error("mgf_gain_square: argument at or beyond the MGF pole");
    }
    return std::exp(x * m.mean * m.mean / denom) / std::sqrt(denom);
}

double cpep(std::complex<double> g_true, std::complex<double> g_cross,
            std::complex<double> s, std::complex<double> s_hat, double rho) {
    if (!(rho >= 0.0)) throw std::invalid_argument("cpep: rho must be >= 0");
    const double d2 = std::norm(g_true * s - g_cross * s_hat);
    return q_function(std::sqrt(0.5 * rho * d2));
}

MomentSet pair_moments(std::complex<double> s, std::complex<double> s_hat, int ris_elements) {
    if (ris_elements < 1) throw std::invalid_argument("pair_moments: ris_elements must be >= 1");
    const double L = ris_elements;
    const double spread = (16.0 - pi * pi) * L / 16.0;
    const double cross_power = std::norm(s_hat) * L / 2.0;
    MomentSet m;
    m.mu = {L * pi / 4.0 * s.real(), L * pi / 4.0 * s.imag()};
    m.v[0][0] = spread * s.real() * s.real() + cross_power;
    m.v[1][1] = spread * s.imag() * s.imag() + cross_power;
    m.v[0][1] = m.v[1][0] = spread * s.real() * s.imag();
    return m;
}

double mgf_quadratic_form(double x, const MomentSet& m) {
    const Mat2 v{m.v[0][0], m.v[0][1], m.v[1][0], m.v[1][1]};
    const double det_v = v.det();
    if (det_v == 0.0) throw std::domain_error("mgf_quadratic_form: singular covariance");
    // A = I, so AV = V and B = I - 2xAV.
    const Mat2 b{1.0 - 2.0 * x * v.a, -2.0 * x * v.b, -2.0 * x * v.c, 1.0 - 2.0 * x * v.d};
    const double det_b = b.det();
    if (!(det_b > 0.0 && b.a > 0.0)) {
        throw std::domain_error("mgf_quadratic_form: I - 2xAV not positive definite");
    }
    const Mat2 b_inv = b.adjugate().scaled(1.0 / det_b);
    const Mat2 eye_minus_binv{1.0 - b_inv.a, -b_inv.b, -b_inv.c, 1.0 - b_inv.d};
    const Mat2 v_inv = v.adjugate().scaled(1.0 / det_v);
    const Mat2 w = eye_minus_binv * v_inv;
    const double quad = m.mu[0] * (w.a * m.mu[0] + w.b * m.mu[1]) +
                        m.mu[1] * (w.c * m.mu[0] + w.d * m.mu[1]);
    return std::exp(-0.5 * quad) / std::sqrt(det_b);
}

double upep_correct_antenna(std::complex<double> s, std::complex<double> s_hat, double rho,
                            int ris_elements, int gcq_points) {
    check_common(rho, ris_elements, gcq_points);
    const XiMoments m = xi_moments(ris_elements);
    const double d2 = std::norm(s - s_hat);
    const double var_term = rho * m.variance * d2;
    const double mean_term = rho * m.mean * m.mean * d2;
    return craig_chebyshev(
        [&](double theta) {
            const double sin2 = std::sin(theta) * std::sin(theta);
            return std::sqrt(2.0 * sin2 / (2.0 * sin2 + var_term)) *
                   std::exp(-mean_term / (4.0 * sin2 + 2.0 * var_term));
        },
        gcq_points);
}

double upep_cross_antenna(std::complex<double> s, std::complex<double> s_hat, double rho,
                          int ris_elements, int gcq_points) {
    check_common(rho, ris_elements, gcq_points);
    const MomentSet m = pair_moments(s, s_hat, ris_elements);
    return craig_chebyshev(
        [&](double theta) {
            const double sin2 = std::sin(theta) * std::sin(theta);
            return mgf_quadratic_form(-rho / (4.0 * sin2), m);
        },
        gcq_points);
}

double abep_union_bound(int tx_antennas, const Constellation& c, int ris_elements,
                        double rho, int gcq_points) {
    if (tx_antennas < 1 || (tx_antennas & (tx_antennas - 1)) != 0) {
        throw std::invalid_argument("abep_union_bound: tx_antennas must be a power of two");
    }
    const int order = c.order;
    if (tx_antennas * order < 2) {
        throw std::invalid_argument("abep_union_bound: need Nt*M >= 2");
    }
    check_common(rho, ris_elements, gcq_points);

    // UPEPs depend only on the symbol pair, not the antenna pair; cache them.
    const int none = -1;
    std::vector<double> correct_cache(order * order, none);
    std::vector<double> cross_cache(order * order, none);

    const double bits = sm_bits_per_symbol(tx_antennas, c);
    double acc = 0.0;
    for (int n = 1; n <= tx_antennas; ++n) {
        for (int m = 0; m < order; ++m) {
            for (int nh = 1; nh <= tx_antennas; ++nh) {
                for (int mh = 0; mh < order; ++mh) {
                    const int weight =
                        hamming_distance({n, m}, {nh, mh}, tx_antennas, c);
                    if (weight == 0) continue;
                    double& slot = (n == nh) ? correct_cache[m * order + mh]
                                             : cross_cache[m * order + mh];
                    if (slot == none) {
                        slot = (n == nh)
                                   ? upep_correct_antenna(c.points[m], c.points[mh], rho,
                                                          ris_elements, gcq_points)
                                   : upep_cross_antenna(c.points[m], c.points[mh], rho,
                                                        ris_elements, gcq_points);
                    }
                    acc += slot * weight;
                }
            }
        }
    }
    return acc / (tx_antennas * order * bits);
}

}  // namespace rissm
