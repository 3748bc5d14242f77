#include "fractal/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace fractal::quadrature {

namespace {

Rule build_gauss_legendre(std::size_t n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, Rule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
    return it->second;
}

const KronrodPair& gauss_kronrod_15() {
    static const KronrodPair pair = [] {
        const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                               0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                               0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                               0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                               0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                               0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                               0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
        KronrodPair p{};
        for (int i = 0; i < 7; ++i) {
            p.nodes[i] = -xgk[i];
            p.nodes[14 - i] = xgk[i];
            p.kronrod[i] = p.kronrod[14 - i] = wgk[i];
        }
        p.nodes[7] = 0.0;
        p.kronrod[7] = wgk[7];
        // Gauss nodes are the odd-indexed Kronrod abscissae.
        for (int i = 0; i < 15; ++i) p.gauss[i] = 0.0;
        p.gauss[1] = p.gauss[13] = wg[0];
        p.gauss[3] = p.gauss[11] = wg[1];
        p.gauss[5] = p.gauss[9] = wg[2];
        p.gauss[7] = wg[3];
        return p;
    }();
    return pair;
}

}  // namespace fractal::quadrature
