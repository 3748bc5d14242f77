// One line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fractal/cdim.hpp"
#include "fractal/error.hpp"
#include "fractal/fzeta.hpp"
#include "fractal/tubeformula.hpp"

using namespace fractal;
using geometry::CompactSetDescriptor;
using Complex = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
const double kGasketDim = std::log2(3.0);
const double kCarpetDim = std::log(26.0) / std::log(3.0);
const double kCantorDim = std::log(2.0) / std::log(3.0);

// Pinned tolerances and time limits.
constexpr double kResidueRelTol = 1e-8;
constexpr double kPoleLocationTol = 1e-8;
constexpr double kFunctionalEquationTol = 1e-3;
constexpr double kCantorTubeRelTol = 1e-2;
constexpr double kPointTubeTol = 1e-12;
constexpr double kOscillationThreshold = 1.001;
constexpr double kDimTol = 0.05;
constexpr double kCarpetDimTol = 0.08;
constexpr double kScalingRelTol = 1e-13;
constexpr double kDeltaIndependenceTol = 1e-10;
constexpr double kRealnessTol = 1e-10;
constexpr double kKappaLow = -1.3;
constexpr double kKappaHigh = -0.7;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > time_limit_s) {
        o.pass = false;
        o.detail += " [over time limit]";
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d. %s: %s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                elapsed, time_limit_s);
    std::fflush(stdout);
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::string fine(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::function<Complex(Complex)> eval(const zeta::ClosedFormZeta& z) {
    return [z](Complex s) { return zeta::evaluate_unchecked(z, s); };
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

std::vector<Complex> candidates(const zeta::ClosedFormZeta& z, double height) {
    return zeta::candidate_poles(z, height);
}

std::vector<geometry::TubeSample> proxy_samples(const CompactSetDescriptor& set) {
    geometry::TubeOptions o;
    if (set.ambient_dim() > 1) o.method = geometry::TubeMethod::MonteCarlo;
    o.mc_samples = 1'000'000;
    o.seed = 7;
    const auto ts = geometry::log_spaced(1e-3, 1e-1, 16);
    return geometry::sample_tube_curve(set, ts, o);
}

// Worst relative gap between contour residues and a reference on a lattice family and real poles.
double worst_residue_error(const zeta::ClosedFormZeta& z, const std::vector<std::pair<Complex, Complex>>& expected) {
    auto others = candidates(z, 60.0);
    double worst = 0.0;
    for (const auto& [w, want] : expected) {
        worst = std::max(worst, rel(cdim::residue_contour(eval(z), w, 0.1, others), want));
    }
    return worst;
}

}  // namespace

int main() {
    criterion(1, "gasket residues by contour integration", 1.0, [] {
        auto z = zeta::catalog_zeta(CompactSetDescriptor::gasket(), 0.5);
        const double period = 2 * kPi / std::log(2.0);
        std::vector<std::pair<Complex, Complex>> expected{{0.0, 3 * kSqrt3 + 2 * kPi}};
        for (int k = -5; k <= 5; ++k) {
            Complex w(kGasketDim, k * period);
            Complex r = 6.0 * std::pow(Complex(kSqrt3), 1.0 - w) / (std::pow(Complex(4.0), w) * std::log(2.0) * w * (w - 1.0));
            expected.emplace_back(w, r);
        }
        const double worst = worst_residue_error(z, expected);
        return Outcome{worst <= kResidueRelTol, "12 residues, max rel error " + sci(worst)};
    });

    criterion(2, "carpet residues by contour integration", 1.0, [] {
        auto z = zeta::catalog_zeta(CompactSetDescriptor::carpet(), 0.25);
        const double period = 2 * kPi / std::log(3.0);
        std::vector<std::pair<Complex, Complex>> expected{
            {0.0, 4 * kPi - 24.0 / 25.0}, {1.0, 6 * kPi + 24.0 / 23.0}, {2.0, 96.0 / 17.0}};
        for (int k = -5; k <= 5; ++k) {
            Complex w(kCarpetDim, k * period);
            Complex r = 24.0 / (13.0 * std::pow(Complex(2.0), w) * w * (w - 1.0) * (w - 2.0) * std::log(3.0));
            expected.emplace_back(w, r);
        }
        const double worst = worst_residue_error(z, expected);
        return Outcome{worst <= kResidueRelTol, "14 residues, max rel error " + sci(worst)};
    });

    criterion(3, "argument-principle recovery of gasket poles", 30.0, [] {
        auto z = zeta::catalog_zeta(CompactSetDescriptor::gasket(), 0.5);
        auto found = cdim::find_poles_argument_principle(z, cdim::Rect{-0.5, 2.0, -20.0, 20.0}, 1e-10);
        std::vector<Complex> want{0.0};
        for (Complex w : cdim::lattice_poles(2.0, 3.0, cdim::Window::band(20.0))) want.push_back(w);
        bool ok = found.size() == want.size();
        double worst = 0.0;
        for (const auto& w : want) {
            double best = INFINITY;
            for (const auto& p : found) {
                best = std::min(best, std::abs(p.location - w));
                ok &= p.order == 1;
            }
            worst = std::max(worst, best);
        }
        ok &= worst <= kPoleLocationTol;
        return Outcome{ok, std::to_string(found.size()) + " poles (expected " + std::to_string(want.size()) +
                               "), max location error " + sci(worst)};
    });

    criterion(4, "functional equation at random s", 120.0, [] {
        struct Case {
            CompactSetDescriptor set;
            double dim;
        };
        std::vector<Case> cases{{CompactSetDescriptor::point({0.0}), 0.0},
                                {CompactSetDescriptor::middle_third_cantor(), kCantorDim},
                                {CompactSetDescriptor::gasket(), kGasketDim}};
        std::mt19937_64 rng(2024);
        double worst = 0.0;
        int count = 0;
        for (const auto& c : cases) {
            const double n = static_cast<double>(c.set.ambient_dim());
            std::uniform_real_distribution<double> re(c.dim + 0.25, n + 1.0), im(-5.0, 5.0);
            zeta::NumericZetaConfig cfg;
            cfg.delta = zeta::catalog_info(c.set).default_delta;
            cfg.mc_samples = 1'000'000;
            for (int i = 0; i < 20; ++i) {
                cfg.seed = rng();
                Complex s(re(rng), im(rng));
                worst = std::max(worst, zeta::functional_equation_residual(c.set, s, cfg));
                ++count;
            }
        }
        return Outcome{worst <= kFunctionalEquationTol, std::to_string(count) + " points, max residual " + sci(worst)};
    });

    criterion(5, "tube formula vs exact 1-D oracle", 10.0, [] {
        auto cs = CompactSetDescriptor::cantor_string_boundary();
        auto info = zeta::catalog_info(cs);
        auto series = tube::build_series(zeta::catalog_zeta(cs, info.default_delta), 50, info.tube_formula_limit);
        const auto ts = geometry::log_spaced(1e-4, 1e-1, 32);
        auto cmp = tube::compare_tube_formula(cs, series, ts);

        auto pt = CompactSetDescriptor::point({0.0});
        auto pseries = tube::build_series(zeta::catalog_zeta(pt, 1.0), 50);
        auto pcmp = tube::compare_tube_formula(pt, pseries, ts);
        double point_err = 0.0;
        for (const auto& r : pcmp.rows) point_err = std::max(point_err, r.abs_error);

        const bool ok = cmp.max_rel_error() <= kCantorTubeRelTol && point_err <= kPointTubeTol;
        return Outcome{ok, "Cantor string K=50 max rel error " + sci(cmp.max_rel_error()) + ", point max abs error " +
                               sci(point_err)};
    });

    criterion(6, "gasket tube formula vs grid oracle", 300.0, [] {
        auto g = CompactSetDescriptor::gasket();
        auto info = zeta::catalog_info(g);
        auto series = tube::build_series(zeta::catalog_zeta(g, 0.5), 20, info.tube_formula_limit);
        geometry::TubeOptions grid;
        grid.method = geometry::TubeMethod::GridCount;
        grid.cell_size = 5e-4;
        const auto ts = geometry::log_spaced(1e-2, 1e-1, 8);
        auto cmp = tube::compare_tube_formula(g, series, ts, grid);
        double worst_ratio = 0.0;
        for (const auto& r : cmp.rows) worst_ratio = std::max(worst_ratio, r.abs_error / (r.oracle_error_bound + r.tail_estimate));
        return Outcome{cmp.rows.size() == 8 && cmp.within_error_budget(),
                       "8 points, worst |formula - oracle| / (bound + tail) = " + sci(worst_ratio)};
    });

    criterion(7, "measurability verdicts and oscillation proxy", 60.0, [] {
        struct Case {
            CompactSetDescriptor set;
            tube::Verdict expect;
        };
        std::vector<Case> cases{{CompactSetDescriptor::gasket(), tube::Verdict::NotMeasurable},
                                {CompactSetDescriptor::carpet(), tube::Verdict::NotMeasurable},
                                {CompactSetDescriptor::point({0.0}), tube::Verdict::Measurable}};
        bool ok = true;
        std::string detail;
        for (const auto& c : cases) {
            auto info = zeta::catalog_info(c.set);
            auto v = tube::measurability_from_closed_form(zeta::catalog_zeta(c.set, info.default_delta), *info.dimension, 20.0);
            auto samples = proxy_samples(c.set);
            auto b = tube::content_bounds_estimate(samples, *info.dimension, c.set.ambient_dim());
            const double ratio = b.upper / b.lower;
            const bool proxy_says_not = ratio > kOscillationThreshold;
            ok &= v.verdict == c.expect;
            ok &= proxy_says_not == (v.verdict == tube::Verdict::NotMeasurable);
            if (c.expect == tube::Verdict::Measurable) ok &= v.content && std::abs(*v.content - 2.0) <= 1e-12;
            detail += info.name + " " + tube::to_string(v.verdict) + " (proxy ratio " + fine(ratio) + ")";
            if (v.content) detail += " content " + sci(*v.content);
            detail += "; ";
        }
        return Outcome{ok, detail};
    });

    criterion(8, "box dimension fits", 300.0, [] {
        auto cantor = geometry::sample_tube_curve(CompactSetDescriptor::middle_third_cantor(), geometry::log_spaced(1e-3, 1e-1, 16));
        const double dc = tube::box_dimension_fit(cantor, 1);
        const double dg = tube::box_dimension_fit(proxy_samples(CompactSetDescriptor::gasket()), 2);
        const double dk = tube::box_dimension_fit(proxy_samples(CompactSetDescriptor::carpet()), 3);
        const bool ok = std::abs(dc - kCantorDim) <= kDimTol && std::abs(dg - kGasketDim) <= kDimTol &&
                        std::abs(dk - kCarpetDim) <= kCarpetDimTol;
        return Outcome{ok, "Cantor " + sci(dc) + " (" + sci(kCantorDim) + "), gasket " + sci(dg) + " (" + sci(kGasketDim) +
                               "), carpet " + sci(dk) + " (" + sci(kCarpetDim) + ")"};
    });

    criterion(9, "scaling, conjugate closure, realness, delta independence", 60.0, [] {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> lam(0.2, 5.0), re(3.0, 5.0), im(-5.0, 5.0);
        auto g = zeta::catalog_zeta(CompactSetDescriptor::gasket(), 0.5);
        double scaling = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double l = lam(rng);
            const Complex s(re(rng), im(rng));
            auto scaled = zeta::scale_zeta(g, l);
            scaling = std::max(scaling, rel(zeta::closed_form_eval(scaled, s), std::pow(l, s) * zeta::closed_form_eval(g, s)));
        }

        std::vector<CompactSetDescriptor> sets{CompactSetDescriptor::point({0.0}), CompactSetDescriptor::middle_third_cantor(),
                                               CompactSetDescriptor::cantor_string_boundary(), CompactSetDescriptor::gasket(),
                                               CompactSetDescriptor::carpet()};
        bool closed = true;
        double imag = 0.0, delta_gap = 0.0;
        for (const auto& set : sets) {
            auto info = zeta::catalog_info(set);
            auto z = zeta::catalog_zeta(set, info.default_delta);
            auto series = tube::build_series(z, 20, info.tube_formula_limit);
            for (const auto& p : series.poles) {
                bool found = false;
                for (const auto& q : series.poles) found |= std::abs(q.location - std::conj(p.location)) < 1e-12;
                closed &= found;
            }
            const double hi = std::isfinite(info.tube_formula_limit) ? info.tube_formula_limit : 1.0;
            for (double t : geometry::log_spaced(1e-4, 0.99 * hi, 12)) {
                Complex total = 0.0;
                for (const auto& p : series.poles) total += tube::tube_term(p, t, series.ambient_dim);
                imag = std::max(imag, std::abs(total.imag()) / std::abs(total));
            }
            // Residues at twice the default delta, recomputed by contour integration.
            auto other = zeta::catalog_zeta(set, 2.0 * info.default_delta);
            auto others = candidates(other, 60.0);
            for (const auto& p : series.poles) {
                if (p.order != 1) continue;
                Complex q = cdim::residue_contour(eval(other), p.location, 0.1, others);
                delta_gap = std::max(delta_gap, std::abs(q - p.residue) / std::abs(p.residue));
            }
        }
        const bool ok = scaling <= kScalingRelTol && closed && imag <= kRealnessTol && delta_gap <= kDeltaIndependenceTol;
        return Outcome{ok, "scaling rel error " + sci(scaling) + ", conjugate closed " + (closed ? "yes" : "no") +
                               ", max |Im|/|sum| " + sci(imag) + ", delta drift " + sci(delta_gap)};
    });

    criterion(10, "languidity exponent along Re s = D + 1/2", 10.0, [] {
        const auto heights = geometry::log_spaced(10.0, 1000.0, 32);
        std::string detail;
        bool ok = true;
        for (auto [set, dim] : {std::pair{CompactSetDescriptor::gasket(), kGasketDim}, std::pair{CompactSetDescriptor::carpet(), kCarpetDim}}) {
            auto z = zeta::catalog_zeta(set, zeta::catalog_info(set).default_delta);
            auto known = candidates(z, 1100.0);
            auto est = cdim::languidity_probe(eval(z), dim + 0.5, heights, known);
            ok &= est.kappa >= kKappaLow && est.kappa <= kKappaHigh;
            detail += set.kind() + " kappa " + sci(est.kappa) + "; ";
        }
        return Outcome{ok, detail};
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
