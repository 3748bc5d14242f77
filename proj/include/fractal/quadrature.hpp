#pragma once

#include <cstddef>
#include <vector>

namespace fractal::quadrature {

struct Rule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
const Rule& gauss_legendre(std::size_t n);

/// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK constants).
struct KronrodPair {
    static constexpr std::size_t size = 15;
    double nodes[15];
    double kronrod[15];
    double gauss[15];  // zero at the Kronrod-only nodes
};
const KronrodPair& gauss_kronrod_15();

}  // namespace fractal::quadrature
