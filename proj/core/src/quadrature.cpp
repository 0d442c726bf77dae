#include "ossfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ossfem {

namespace {

QuadratureRule make_degree1() {
    QuadratureRule r;
    r.degree = 1;
    r.points = {{1.0 / 3.0, 1.0 / 3.0}};
    r.weights = {0.5};
    return r;
}

QuadratureRule make_degree2() {
    QuadratureRule r;
    r.degree = 2;
    r.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
    r.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    return r;
}

// Six-point degree-4 rule (two symmetric orbits, all weights positive). The
// classical four-point degree-3 rule has a negative centroid weight, so
// degree-3 requests are served by this rule as well.
QuadratureRule make_degree4() {
    QuadratureRule r;
    r.degree = 4;
    const double a1 = 0.445948490915965;
    const double w1 = 0.223381589678011 / 2.0;
    const double a2 = 0.091576213509771;
    const double w2 = 0.109951743655322 / 2.0;
    r.points = {{a1, a1}, {1.0 - 2.0 * a1, a1}, {a1, 1.0 - 2.0 * a1},
                {a2, a2}, {1.0 - 2.0 * a2, a2}, {a2, 1.0 - 2.0 * a2}};
    r.weights = {w1, w1, w1, w2, w2, w2};
    return r;
}

// Seven-point degree-5 rule (centroid plus two symmetric orbits).
QuadratureRule make_degree5() {
    QuadratureRule r;
    r.degree = 5;
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0;
    const double w1 = (155.0 - s15) / 2400.0;
    const double a2 = (6.0 + s15) / 21.0;
    const double w2 = (155.0 + s15) / 2400.0;
    r.points = {{1.0 / 3.0, 1.0 / 3.0},
                {a1, a1}, {1.0 - 2.0 * a1, a1}, {a1, 1.0 - 2.0 * a1},
                {a2, a2}, {1.0 - 2.0 * a2, a2}, {a2, 1.0 - 2.0 * a2}};
    r.weights = {9.0 / 80.0, w1, w1, w1, w2, w2, w2};
    return r;
}

}  // namespace

const QuadratureRule& quadrature_rule(int min_degree) {
    static const QuadratureRule d1 = make_degree1();
    static const QuadratureRule d2 = make_degree2();
    static const QuadratureRule d4 = make_degree4();
    static const QuadratureRule d5 = make_degree5();
    switch (min_degree) {
        case 1: return d1;
        case 2: return d2;
        case 3:
        case 4: return d4;
        case 5: return d5;
        default: throw std::invalid_argument("quadrature_rule: degree must be in [1,5]");
    }
}

}  // namespace ossfem
