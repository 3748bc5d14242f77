#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "fractal/error.hpp"
#include "fractal/fzeta.hpp"
#include "fractal/tubeformula.hpp"
#include "oracles.hpp"

using namespace fractal;
using namespace fractal::tube;
using geometry::CompactSetDescriptor;

namespace {

const double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);
const double kGasketDim = std::log2(3.0);
const double kCarpetDim = std::log(26.0) / std::log(3.0);
const double kCantorDim = std::log(2.0) / std::log(3.0);

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

TubeFormulaSeries series_for(const CompactSetDescriptor& set, int k) {
    auto info = zeta::catalog_info(set);
    return build_series(zeta::catalog_zeta(set, info.default_delta), k, info.tube_formula_limit);
}

std::vector<CompactSetDescriptor> catalog() {
    return {CompactSetDescriptor::point({0.0}), CompactSetDescriptor::middle_third_cantor(),
            CompactSetDescriptor::cantor_string_boundary(), CompactSetDescriptor::gasket(),
            CompactSetDescriptor::carpet()};
}

std::vector<geometry::TubeSample> samples_for(const CompactSetDescriptor& set) {
    geometry::TubeOptions o;
    if (set.ambient_dim() > 1) o.method = geometry::TubeMethod::MonteCarlo;
    o.seed = 7;
    auto ts = geometry::log_spaced(1e-3, 1e-1, 16);
    return geometry::sample_tube_curve(set, ts, o);
}

}  // namespace

TEST_CASE("tube_term examples") {
    cdim::Pole point{0.0, 1, 2.0, {}};
    CHECK(tube_term(point, 0.25, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tube_term(point, 0.25, 1).imag() == 0.0);

    const double t = 0.03;
    cdim::Pole g0{0.0, 1, 3 * kSqrt3 + 2 * kPi, {}};
    CHECK(tube_term(g0, t, 2).real() == doctest::Approx((3 * kSqrt3 / 2 + kPi) * t * t).epsilon(1e-14));

    cdim::Pole c2{2.0, 1, 96.0 / 17.0, {}};
    CHECK(tube_term(c2, t, 3).real() == doctest::Approx((6.0 - 6.0 / 17.0) * t).epsilon(1e-14));

    CHECK(code_of([] { tube_term(cdim::Pole{1.0, 1, 1.0, {}}, 0.1, 1); }) == ErrorCode::DimensionCollision);
    CHECK(code_of([] { tube_term(cdim::Pole{0.0, 1, 1.0, {}}, 0.0, 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("tube_term of a double pole is the residue of the full product") {
    // zeta ~ a/(s-w)^2 + c/(s-w): residue = a g'(w) + c g(w) with g(s) = t^(N-s)/(N-s)
    const Complex w(0.4, 1.5), a(2.0, -0.5), c(0.7, 0.3);
    const double t = 0.07;
    const double n = 2.0;
    cdim::Pole p{w, 2, c, {a}};
    Complex g = std::exp((n - w) * std::log(t)) / (n - w);
    Complex dg = g * (-std::log(t)) + g / (n - w);
    Complex got = tube_term(p, t, 2);
    CHECK(std::abs(got - (a * dg + c * g)) <= 1e-12 * std::abs(a * dg + c * g));
}

TEST_CASE("tube_formula_truncated examples") {
    auto point = series_for(CompactSetDescriptor::point({0.0}), 50);
    for (double t : {0.01, 0.3, 0.9}) CHECK(tube_formula_truncated(point, t) == doctest::Approx(2 * t).epsilon(1e-15));

    auto cs = series_for(CompactSetDescriptor::cantor_string_boundary(), 50);
    CHECK(std::abs(tube_formula_truncated(cs, 0.01) - oracle::cantor_tube(0.01)) <= 1e-2 * oracle::cantor_tube(0.01));

    auto g = series_for(CompactSetDescriptor::gasket(), 20);
    geometry::TubeOptions grid;
    grid.method = geometry::TubeMethod::GridCount;
    grid.cell_size = 5e-4;
    auto direct = geometry::tube_volume(CompactSetDescriptor::gasket(), 0.01, grid);
    REQUIRE(direct.error_bound);
    CHECK(std::abs(tube_formula_truncated(g, 0.01) - direct.volume) <=
          *direct.error_bound + truncation_tail_estimate(g, 0.01));

    CHECK(code_of([&] { tube_formula_truncated(g, 0.3); }) == ErrorCode::OutOfValidityRange);
    CHECK(code_of([&] { tube_formula_truncated(g, -1.0); }) == ErrorCode::OutOfValidityRange);

    TubeFormulaSeries lopsided;
    lopsided.ambient_dim = 2;
    lopsided.poles.push_back(cdim::Pole{Complex(1.5, 9.0), 1, 1.0, {}});
    CHECK(code_of([&] { tube_formula_truncated(lopsided, 0.1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("build_series collects real poles and symmetric lattice bands") {
    auto g = series_for(CompactSetDescriptor::gasket(), 3);
    CHECK(g.poles.size() == 1 + 7);
    auto c = series_for(CompactSetDescriptor::carpet(), 2);
    CHECK(c.poles.size() == 3 + 5);
    CHECK(c.poles.back().location.real() == doctest::Approx(kCarpetDim));
    auto k0 = series_for(CompactSetDescriptor::cantor_string_boundary(), 0);
    REQUIRE(k0.poles.size() == 1);
    CHECK(k0.poles[0].location.real() == doctest::Approx(kCantorDim));

    zeta::ClosedFormZeta bad;
    bad.ambient_dim = 1;
    bad.elementary_terms.push_back({1.0, 0, 1.0});
    CHECK(code_of([&] { build_series(bad, 5); }) == ErrorCode::DimensionCollision);
    CHECK(code_of([] { series_for(CompactSetDescriptor::gasket(), -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("truncation_tail_estimate examples") {
    auto g20 = series_for(CompactSetDescriptor::gasket(), 20);
    auto g40 = series_for(CompactSetDescriptor::gasket(), 40);
    CHECK(std::abs(tube_formula_truncated(g20, 0.01) - tube_formula_truncated(g40, 0.01)) <=
          truncation_tail_estimate(g20, 0.01));

    auto c10 = series_for(CompactSetDescriptor::carpet(), 10);
    auto c30 = series_for(CompactSetDescriptor::carpet(), 30);
    CHECK(std::abs(tube_formula_truncated(c10, 0.1) - tube_formula_truncated(c30, 0.1)) <=
          truncation_tail_estimate(c10, 0.1));

    CHECK(truncation_tail_estimate(series_for(CompactSetDescriptor::point({0.0}), 5), 0.2) == 0.0);

    // the fallback without a source still covers the omitted terms
    auto bare = g20;
    bare.source.reset();
    CHECK(std::abs(tube_formula_truncated(g20, 0.01) - tube_formula_truncated(g40, 0.01)) <=
          truncation_tail_estimate(bare, 0.01));
}

TEST_CASE("minkowski_content_from_residue examples") {
    CHECK(minkowski_content_from_residue(2.0, 1, 0.0) == 2.0);
    CHECK(minkowski_content_from_residue(0.5, 2, 0.5) == doctest::Approx(1.0 / 3.0));
    const double d = kCantorDim;
    auto cs = series_for(CompactSetDescriptor::cantor_string_boundary(), 0);
    CHECK(minkowski_content_from_residue(cs.poles[0].residue.real(), 1, d) ==
          doctest::Approx(std::pow(2.0, -d) / (d * (1 - d) * std::log(3.0))).epsilon(1e-13));
    CHECK(code_of([] { minkowski_content_from_residue(0.0, 1, 0.5); }) == ErrorCode::NonpositiveContent);
    CHECK(code_of([] { minkowski_content_from_residue(1.0, 1, 1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("content_bounds_estimate and box_dimension_fit examples") {
    auto ts = geometry::log_spaced(1e-3, 1e-1, 16);
    auto point = geometry::sample_tube_curve(CompactSetDescriptor::point({0.0}), ts);
    auto pb = content_bounds_estimate(point, 0.0, 1);
    CHECK(pb.lower == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(pb.upper == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(box_dimension_fit(point, 1)) <= 0.02);

    auto gs = samples_for(CompactSetDescriptor::gasket());
    auto gb = content_bounds_estimate(gs, kGasketDim, 2);
    CHECK(gb.upper / gb.lower > 1.001);
    CHECK(std::abs(box_dimension_fit(gs, 2) - kGasketDim) <= 0.05);

    auto cantor = geometry::sample_tube_curve(CompactSetDescriptor::middle_third_cantor(), ts);
    CHECK(std::abs(box_dimension_fit(cantor, 1) - kCantorDim) <= 0.05);

    // r below D: the proxy diverges as t shrinks
    std::vector<geometry::TubeSample> fine(cantor.begin(), cantor.begin() + 8);
    std::vector<geometry::TubeSample> coarse(cantor.begin() + 8, cantor.end());
    auto ratio = [](const geometry::TubeSample& s) { return s.volume / s.t; };
    CHECK(ratio(fine.front()) > ratio(coarse.back()));
    CHECK(ratio(cantor[0]) > ratio(cantor[5]));

    CHECK(code_of([&] { content_bounds_estimate(std::span(point).first(15), 0.0, 1); }) ==
          ErrorCode::InsufficientSamples);
    auto narrow = geometry::sample_tube_curve(CompactSetDescriptor::point({0.0}), geometry::log_spaced(1e-2, 5e-1, 16));
    CHECK(code_of([&] { box_dimension_fit(narrow, 1); }) == ErrorCode::InsufficientSamples);
}

TEST_CASE("measurability criterion examples") {
    for (auto set : {CompactSetDescriptor::gasket(), CompactSetDescriptor::carpet()}) {
        auto info = zeta::catalog_info(set);
        auto v = measurability_from_closed_form(zeta::catalog_zeta(set, info.default_delta), *info.dimension, 20.0);
        CHECK(v.verdict == Verdict::NotMeasurable);
        CHECK(v.critical_line_poles.size() >= 3);
        CHECK_FALSE(v.content);
        CHECK(v.hypotheses_assumed);
        REQUIRE(v.evidence.languidity);
    }
    auto g = measurability_from_closed_form(zeta::catalog_zeta(CompactSetDescriptor::gasket(), 0.5), kGasketDim, 20.0);
    REQUIRE(g.critical_line_poles.size() == 5);
    const double period = 2 * kPi / std::log(2.0);
    for (int k = -2; k <= 2; ++k) {
        CHECK(g.critical_line_poles[k + 2].location.imag() == doctest::Approx(k * period));
    }

    auto p = measurability_from_closed_form(zeta::catalog_zeta(CompactSetDescriptor::point({0.0}), 1.0), 0.0, 20.0);
    CHECK(p.verdict == Verdict::Measurable);
    REQUIRE(p.content);
    CHECK(*p.content == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("measurability criterion inconclusive paths") {
    cdim::LanguidityEstimate lang;
    lang.kappa = -1.0;
    MeasurabilityEvidence ok;
    ok.languidity = lang;
    std::vector<cdim::Pole> simple{cdim::Pole{0.5, 1, 1.0, {}}};

    CHECK(measurability_criterion(simple, 0.5, 1, 1e-6, ok).verdict == Verdict::Measurable);
    CHECK(measurability_criterion(simple, 0.5, 1, 1e-6).verdict == Verdict::Inconclusive);

    auto narrow = ok;
    narrow.oscillation_period = 9.0;
    narrow.searched_half_height = 5.0;
    CHECK(measurability_criterion(simple, 0.5, 1, 1e-6, narrow).verdict == Verdict::Inconclusive);

    auto straddle = simple;
    straddle.push_back(cdim::Pole{Complex(0.5 + 5e-6, 3.0), 1, 1.0, {}});
    CHECK(measurability_criterion(straddle, 0.5, 1, 1e-6, ok).verdict == Verdict::Inconclusive);

    std::vector<cdim::Pole> doubled{cdim::Pole{0.5, 2, 1.0, {Complex(1.0)}}};
    CHECK(measurability_criterion(doubled, 0.5, 1, 1e-6, ok).verdict == Verdict::NotMeasurable);

    CHECK(measurability_criterion({}, 0.5, 1, 1e-6, ok).verdict == Verdict::Inconclusive);
    CHECK(measurability_criterion(simple, 1.5, 1, 1e-6, ok).verdict == Verdict::Inconclusive);

    std::vector<cdim::Pole> negative{cdim::Pole{0.5, 1, -1.0, {}}};
    auto v = measurability_criterion(negative, 0.5, 1, 1e-6, ok);
    CHECK(v.verdict == Verdict::Inconclusive);
    CHECK_FALSE(v.content);
}

TEST_CASE("property: series sums are real") {
    std::mt19937_64 rng(11);
    for (const auto& set : catalog()) {
        auto info = zeta::catalog_info(set);
        const double hi = std::isfinite(info.tube_formula_limit) ? info.tube_formula_limit : 1.0;
        std::uniform_real_distribution<double> pick(1e-4, hi);
        for (int k : {0, 3, 25}) {
            auto s = series_for(set, k);
            for (const auto& p : s.poles) {
                bool has_conjugate = false;
                for (const auto& q : s.poles) has_conjugate |= std::abs(q.location - std::conj(p.location)) < 1e-12;
                CHECK(has_conjugate);
            }
            for (int i = 0; i < 10; ++i) {
                const double t = pick(rng) * (1 - 1e-9);
                Complex total = 0.0;
                for (const auto& p : s.poles) total += tube_term(p, t, s.ambient_dim);
                CHECK(std::abs(total.imag()) <= 1e-10 * std::abs(total));
                CHECK(tube_formula_truncated(s, t) == total.real());
            }
        }
    }
}

TEST_CASE("property: truncations converge with differences under the tail estimate") {
    for (auto set : {CompactSetDescriptor::gasket(), CompactSetDescriptor::carpet()}) {
        const auto limit = zeta::catalog_info(set).tube_formula_limit;
        auto reference = series_for(set, 200);
        for (double t : {0.003, 0.02, 0.6 * limit}) {
            std::vector<double> gaps;
            for (int k : {5, 10, 20, 40, 80}) {
                auto s = series_for(set, k);
                gaps.push_back(std::abs(tube_formula_truncated(s, t) - tube_formula_truncated(reference, t)));
                CHECK(gaps.back() <= truncation_tail_estimate(s, t));
            }
            CHECK(gaps.back() < gaps.front());
        }
    }
}

TEST_CASE("property: Cantor string formula matches the sweep oracle") {
    auto s = series_for(CompactSetDescriptor::cantor_string_boundary(), 50);
    const auto ts = geometry::log_spaced(1e-4, 1e-1, 32);
    auto direct = geometry::sample_tube_curve(CompactSetDescriptor::cantor_string_boundary(), ts);
    for (const auto& d : direct) {
        CHECK(std::abs(tube_formula_truncated(s, d.t) - d.volume) <= 1e-2 * d.volume);
        CHECK(d.volume == doctest::Approx(oracle::cantor_tube(d.t)).epsilon(1e-12));
    }
}

TEST_CASE("property: verdicts agree with the oscillation proxy on the catalog") {
    const double threshold = 1.001;
    for (const auto& set : catalog()) {
        CAPTURE(set.kind());
        auto info = zeta::catalog_info(set);
        const double d = *info.dimension;
        auto v = measurability_from_closed_form(zeta::catalog_zeta(set, info.default_delta), d, 20.0);
        REQUIRE(v.verdict != Verdict::Inconclusive);
        auto samples = samples_for(set);
        auto b = content_bounds_estimate(samples, d, set.ambient_dim());
        CHECK((b.upper / b.lower > threshold) == (v.verdict == Verdict::NotMeasurable));
    }
}

TEST_CASE("property: leading-order law over the smallest decade") {
    for (const auto& set : catalog()) {
        CAPTURE(set.kind());
        auto info = zeta::catalog_info(set);
        const double d = *info.dimension;
        const double n = static_cast<double>(set.ambient_dim());
        auto samples = samples_for(set);
        auto b = content_bounds_estimate(samples, d, set.ambient_dim());
        auto s = series_for(set, 20);
        for (const auto& x : samples) {
            if (x.t > 10 * samples.front().t * (1 + 1e-9)) continue;
            const double scaled = tube_formula_truncated(s, x.t) / std::pow(x.t, n - d);
            CHECK(scaled >= 0.95 * b.lower);
            CHECK(scaled <= 1.05 * b.upper);
        }
    }
}

TEST_CASE("compare_tube_formula rows and budget") {
    auto set = CompactSetDescriptor::cantor_string_boundary();
    auto s = series_for(set, 50);
    auto ts = geometry::log_spaced(1e-3, 1e-1, 6);
    auto cmp = compare_tube_formula(set, s, ts);
    CHECK(cmp.set_id == set.kind());
    CHECK(cmp.truncation == 50);
    CHECK(cmp.oracle_method == geometry::TubeMethod::Exact1D);
    REQUIRE(cmp.rows.size() == 6);
    for (const auto& r : cmp.rows) {
        CHECK(r.abs_error == std::abs(r.formula - r.direct));
        CHECK(r.rel_error == r.abs_error / r.direct);
    }
    CHECK(cmp.max_rel_error() <= 1e-2);

    auto point = CompactSetDescriptor::point({0.0});
    auto pc = compare_tube_formula(point, series_for(point, 5), ts);
    CHECK(pc.max_rel_error() <= 1e-12);
    CHECK(pc.within_error_budget());

    CHECK(code_of([&] { compare_tube_formula(CompactSetDescriptor::gasket(), s, ts); }) == ErrorCode::InvalidArgument);
}
