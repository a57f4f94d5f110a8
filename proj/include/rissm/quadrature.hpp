#ifndef RISSM_QUADRATURE_HPP
#define RISSM_QUADRATURE_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rissm {

/// Gaussian tail probability Q(x) = P[N(0,1) > x].
double q_function(double x);

/// Open Chebyshev quadrature nodes for the Craig-form integrals:
/// nodes[q-1] = cos((2q-1)*pi/(2Q)), strictly decreasing in (-1, 1),
/// with the constant per-node weight pi/(4Q) of the theta = pi/4*(w + 1)
/// substitution.
struct GcqNodes {
    int count = 0;
    std::vector<double> nodes;
    double weight = 0.0;
};

GcqNodes gcq_nodes(int count);

/// Interpolatory weights (Fejer first rule) for integrating over [-1, 1] at
/// the same open Chebyshev points. Exact for polynomials of degree < count
/// and geometrically convergent for integrands analytic on the interval.
std::vector<double> fejer1_weights(int count);

/// (1/pi) * integral over [0, pi/2] of f(theta), evaluated at the Chebyshev
/// points mapped through theta = pi/4*(w + 1) with Fejer-1 weights.
/// This is the closed-form sum used by the UPEP expressions.
template <typename F>
double craig_chebyshev(F&& f, int count) {
    const GcqNodes g = gcq_nodes(count);
    const std::vector<double> w = fejer1_weights(count);
    double acc = 0.0;
    for (int i = 0; i < count; ++i) {
        const double theta = 0.25 * std::numbers::pi * (1.0 + g.nodes[i]);
        acc += w[i] * f(theta);
    }
    return 0.25 * acc;
}

/// Thrown when the adaptive integrator hits its refinement limit; carries the
/// best estimate accumulated so far.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_(best_estimate) {}
    double best_estimate() const { return best_; }

private:
    double best_;
};

namespace detail {

struct SimpsonState {
    int max_depth = 60;
    bool depth_exceeded = false;
};

template <typename F>
double simpson_recurse(F& f, double a, double fa, double b, double fb, double m,
                       double fm, double whole, double tol, int depth,
                       SimpsonState& st) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth >= st.max_depth) {
        st.depth_exceeded = true;
        return left + right + delta / 15.0;
    }
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, st) +
           simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, st);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with absolute error target
/// tol. Endpoints that evaluate non-finite are nudged inward by a
/// machine-epsilon-scale offset (Craig-form integrands can be 0/0 at theta=0).
/// Deterministic; throws AccuracyError (carrying the best estimate) if the
/// refinement depth limit is reached anywhere.
template <typename F>
double integrate_reference(F&& f, double a, double b, double tol = 1e-10) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_reference: tol must be > 0");
    if (a == b) return 0.0;
    const double nudge = (b - a) * 0x1.0p-45;
    double fa = f(a);
    if (!std::isfinite(fa)) {
        a += nudge;
        fa = f(a);
    }
    double fb = f(b);
    if (!std::isfinite(fb)) {
        b -= nudge;
        fb = f(b);
    }
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    detail::SimpsonState st;
    const double result =
        detail::simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, 0, st);
    if (st.depth_exceeded) {
        throw AccuracyError("integrate_reference: refinement depth exhausted", result);
    }
    return result;
}

}  // namespace rissm

#endif
