#include "rissm/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace rissm {

double q_function(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

GcqNodes gcq_nodes(int count) {
    if (count < 1) throw std::invalid_argument("gcq_nodes: count must be >= 1");
    GcqNodes g;
    g.count = count;
    g.weight = std::numbers::pi / (4.0 * count);
    g.nodes.resize(count);
    for (int q = 1; q <= count; ++q) {
        g.nodes[q - 1] = std::cos((2.0 * q - 1.0) * std::numbers::pi / (2.0 * count));
    }
    return g;
}

std::vector<double> fejer1_weights(int count) {
    if (count < 1) throw std::invalid_argument("fejer1_weights: count must be >= 1");
    std::vector<double> w(count);
    for (int q = 1; q <= count; ++q) {
        const double phi = (2.0 * q - 1.0) * std::numbers::pi / (2.0 * count);
        double s = 0.0;
        for (int m = 1; m <= count / 2; ++m) {
            s += std::cos(2.0 * m * phi) / (4.0 * m * m - 1.0);
        }
        w[q - 1] = (2.0 / count) * (1.0 - 2.0 * s);
    }
    return w;
}

}  // namespace rissm
