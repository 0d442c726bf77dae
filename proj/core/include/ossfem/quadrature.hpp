#pragma once

#include <array>
#include <vector>

namespace ossfem {

/// Symmetric quadrature on the reference triangle {(xi,eta): xi,eta >= 0,
/// xi+eta <= 1}. Weights are positive and sum to the reference area 1/2.
struct QuadratureRule {
    std::vector<std::array<double, 2>> points;
    std::vector<double> weights;
    int degree = 0;  // exact for all polynomials up to this total degree

    int size() const { return static_cast<int>(points.size()); }
};

/// Rule exact for polynomials of total degree >= min_degree, 1 <= min_degree <= 5.
const QuadratureRule& quadrature_rule(int min_degree);

}  // namespace ossfem
