#include "fractal/fzeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fractal/error.hpp"
#include "fractal/quadrature.hpp"
#include "compensated.hpp"

namespace fractal::zeta {

using geometry::CompactSetDescriptor;

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
// Independent stream for the tube side of the functional equation.
constexpr std::uint64_t kTubeStream = 0x9e3779b97f4a7c15ULL;

struct LineSet {
    double largest_gap = 0.0;
    double smallest_gap = INFINITY;
    bool finite = true;
};

LineSet line_gaps(const CompactSetDescriptor& set) {
    auto profile = geometry::gap_profile(set);
    LineSet out;
    out.largest_gap = profile.largest_gap();
    for (double g : profile.gaps) out.smallest_gap = std::min(out.smallest_gap, g);
    if (profile.family) {
        out.finite = false;
        out.smallest_gap = 0.0;
    }
    return out;
}

}  // namespace

void NumericZetaConfig::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
    if (mc_samples < 1000) throw Error(ErrorCode::InvalidArgument, "mc_samples must be at least 1000");
    if (quadrature_points < 64) throw Error(ErrorCode::InvalidArgument, "quadrature_points must be at least 64");
}

double unit_ball_volume(std::size_t n) {
    double h = static_cast<double>(n) / 2.0;
    return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

CatalogInfo catalog_info(const CompactSetDescriptor& set) {
    const auto& v = set.variant();
    CatalogInfo info;
    info.name = set.kind();
    if (const auto* ps = std::get_if<geometry::PointSet>(&v)) {
        info.dimension = 0.0;
        if (ps->points.size() == 1) {
            info.tube_formula_limit = INFINITY;
            return info;
        }
        if (ps->dim != 1) throw Error(ErrorCode::NoClosedForm, "multi-point sets have closed forms only on the line");
        auto g = line_gaps(set);
        info.delta_lower_bound = g.largest_gap / 2.0;
        info.default_delta = std::max(1.0, g.largest_gap);
        info.tube_formula_limit = g.smallest_gap / 2.0;
        return info;
    }
    if (const auto* c = std::get_if<geometry::CantorLike>(&v)) {
        const double m = 1.0 / c->ratio;
        const double gap = (1.0 - 2.0 * c->ratio) * c->scale;
        info.dimension = std::log(2.0) / std::log(m);
        info.oscillation_period = 2.0 * std::numbers::pi / std::log(m);
        info.delta_lower_bound = gap / 2.0;
        info.default_delta = gap;
        info.tube_formula_limit = gap / 2.0;
        return info;
    }
    if (const auto* s = std::get_if<geometry::FractalStringBoundary>(&v)) {
        if (s->generator) {
            const auto& g = *s->generator;
            const double m = 1.0 / g.ratio;
            info.dimension = std::log(static_cast<double>(g.multiplicity)) / std::log(m);
            info.oscillation_period = 2.0 * std::numbers::pi / std::log(m);
            info.delta_lower_bound = g.first / 2.0;
            info.default_delta = g.first;
            info.tube_formula_limit = g.first / 2.0;
            return info;
        }
        info.dimension = 0.0;
        info.delta_lower_bound = s->lengths.front() / 2.0;
        info.default_delta = s->lengths.front();
        info.tube_formula_limit = s->lengths.back() / 2.0;
        return info;
    }
    if (std::holds_alternative<geometry::SierpinskiGasket>(v)) {
        info.dimension = std::log2(3.0);
        info.oscillation_period = 2.0 * std::numbers::pi / std::log(2.0);
        info.delta_lower_bound = 1.0 / (4.0 * kSqrt3);
        info.default_delta = 0.5;
        info.tube_formula_limit = 1.0 / (2.0 * kSqrt3);
        return info;
    }
    if (std::holds_alternative<geometry::SierpinskiCarpet3D>(v)) {
        info.dimension = std::log(26.0) / std::log(3.0);
        info.oscillation_period = 2.0 * std::numbers::pi / std::log(3.0);
        info.delta_lower_bound = 1.0 / 6.0;
        info.default_delta = 0.25;
        info.tube_formula_limit = 0.5;
        return info;
    }
    throw Error(ErrorCode::NoClosedForm, "point clouds have no closed-form zeta function");
}

ClosedFormZeta catalog_zeta(const CompactSetDescriptor& set, double delta) {
    const CatalogInfo info = catalog_info(set);
    if (!(delta > info.delta_lower_bound) || !std::isfinite(delta)) {
        throw Error(ErrorCode::DeltaTooSmall, info.name + " closed form needs delta > " + std::to_string(info.delta_lower_bound));
    }
    ClosedFormZeta z;
    z.ambient_dim = set.ambient_dim();
    z.delta = delta;
    const auto& v = set.variant();

    // A set on the line whose complement in its hull has gaps g contributes
    // 2 (g/2)^s / s per gap plus 2 delta^s / s from the two outer ends.
    auto add_line_gaps = [&](const std::vector<double>& gaps) {
        z.elementary_terms.push_back({2.0, 0, 0.0});
        for (double g : gaps) z.lattice_terms.push_back({2.0, 2.0 / g, {0.0}, std::nullopt});
    };
    auto add_line_family = [&](const geometry::GeometricLengths& g) {
        const double m = 1.0 / g.ratio;
        z.elementary_terms.push_back({2.0, 0, 0.0});
        z.lattice_terms.push_back({2.0, 2.0 / (g.first * m), {0.0}, Lattice{m, static_cast<double>(g.multiplicity)}});
    };

    if (const auto* ps = std::get_if<geometry::PointSet>(&v)) {
        if (ps->points.size() == 1) {
            const double n = static_cast<double>(ps->dim);
            z.elementary_terms.push_back({n * unit_ball_volume(ps->dim), 0, 0.0});
            return z;
        }
        add_line_gaps(geometry::gap_profile(set).gaps);
        return z;
    }
    if (const auto* c = std::get_if<geometry::CantorLike>(&v)) {
        add_line_family(*geometry::gap_profile(set).family);
        (void)c;
        return z;
    }
    if (const auto* s = std::get_if<geometry::FractalStringBoundary>(&v)) {
        if (s->generator) {
            add_line_family(*s->generator);
        } else {
            add_line_gaps(s->lengths);
        }
        return z;
    }
    if (std::holds_alternative<geometry::SierpinskiGasket>(v)) {
        // 6 (sqrt3)^(1-s) 2^(-s) = 6 sqrt3 (2 sqrt3)^(-s)
        z.lattice_terms.push_back({6.0 * kSqrt3, 2.0 * kSqrt3, {0.0, 1.0}, Lattice{2.0, 3.0}});
        z.elementary_terms.push_back({2.0 * std::numbers::pi, 0, 0.0});
        z.elementary_terms.push_back({3.0, 1, 1.0});
        return z;
    }
    if (std::holds_alternative<geometry::SierpinskiCarpet3D>(v)) {
        z.lattice_terms.push_back({48.0, 2.0, {0.0, 1.0, 2.0}, Lattice{3.0, 26.0}});
        z.elementary_terms.push_back({4.0 * std::numbers::pi, 0, 0.0});
        z.elementary_terms.push_back({6.0 * std::numbers::pi, 1, 1.0});
        z.elementary_terms.push_back({6.0, 2, 2.0});
        return z;
    }
    throw Error(ErrorCode::NoClosedForm, "no closed form for " + info.name);
}

namespace {

// Weighted sum over the strata of a distance field. With one point per
// stratum, sum w_i^2 |f_i - mean|^2 estimates the variance of the total.
struct FieldSum {
    detail::CompensatedSum total_re, total_im, volume;
    double weighted_second = 0.0;
    Complex weighted_first = 0.0;
    double weight_sq = 0.0;
    double largest = 0.0;

    void add(double w, Complex f) {
        total_re.add(w * f.real());
        total_im.add(w * f.imag());
        volume.add(w);
        const double w2 = w * w;
        weight_sq += w2;
        weighted_first += w2 * f;
        const double sq = w2 * std::norm(f);
        weighted_second += sq;
        largest = std::max(largest, sq);
    }

    Complex total() const { return {total_re.value(), total_im.value()}; }

    double half_width() const {
        const Complex mean = total() / volume.value();
        const double var = weighted_second - 2.0 * std::real(std::conj(mean) * weighted_first) + std::norm(mean) * weight_sq;
        return 1.96 * std::sqrt(std::max(0.0, var));
    }
};

void require_cover(const geometry::DistanceField& field, double delta) {
    if (delta > field.max_radius() * (1.0 + 1e-12)) {
        throw Error(ErrorCode::InvalidArgument, "distance field does not cover A_delta");
    }
}

}  // namespace

ZetaEstimate distance_zeta_from_field(const geometry::DistanceField& field, Complex s, double delta) {
    require_cover(field, delta);
    const double shift = static_cast<double>(field.dim());
    const auto dist = field.distances();
    FieldSum acc;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double d = dist[i];
        acc.add(field.weight(i), d > 0.0 && d < delta ? std::exp((s - shift) * std::log(d)) : Complex(0.0));
    }
    if (acc.weighted_second > 0.0 && acc.largest > 0.25 * acc.weighted_second && dist.size() > 1000) {
        throw Error(ErrorCode::VarianceOverflow, "a single sample dominates the second moment; Re s is likely at or below the abscissa of convergence");
    }
    if (!std::isfinite(acc.weighted_second)) throw Error(ErrorCode::VarianceOverflow, "non-finite second moment");
    return {acc.total(), acc.half_width()};
}

ZetaEstimate distance_zeta_numeric(const CompactSetDescriptor& set, Complex s, const NumericZetaConfig& cfg) {
    cfg.validate();
    auto field = geometry::DistanceField::adaptive(set, cfg.delta, cfg.mc_samples, cfg.seed, cfg.mc_samples * 4 + 1000);
    return distance_zeta_from_field(field, s, cfg.delta);
}

ZetaEstimate tube_zeta_from_field(const geometry::DistanceField& field, Complex s, double delta) {
    require_cover(field, delta);
    const Complex a = s - static_cast<double>(field.dim());
    const bool logarithmic = std::abs(a) < 1e-14;
    const Complex delta_pow = std::exp(a * std::log(delta));
    const auto dist = field.distances();
    FieldSum acc;
    // The empirical tube function is a step function in t; each sample at
    // distance d contributes the exact integral of t^(s-N-1) over (d, delta).
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double d = dist[i];
        Complex term = 0.0;
        if (d > 0.0 && d < delta) {
            term = logarithmic ? Complex(std::log(delta / d)) : (delta_pow - std::exp(a * std::log(d))) / a;
        }
        acc.add(field.weight(i), term);
    }
    return {acc.total(), acc.half_width()};
}

namespace {

double exact_tube_at(const CompactSetDescriptor& set, const geometry::GapProfile& profile, double t) {
    if (std::holds_alternative<geometry::PointSet>(set.variant()) ||
        (std::holds_alternative<geometry::FractalStringBoundary>(set.variant()) && !profile.family)) {
        return geometry::tube_volume(set, t).volume;
    }
    return geometry::exact_tube_volume_1d(profile, t);
}

// Kinks of the exact tube function sit at t = g/2 for every gap g.
std::vector<double> kink_locations(const geometry::GapProfile& profile, double u_lo, double u_hi) {
    std::vector<double> out;
    auto push = [&](double g) {
        double u = std::log(g / 2.0);
        if (u > u_lo && u < u_hi) out.push_back(u);
    };
    for (double g : profile.gaps) push(g);
    if (profile.family) {
        for (double g = profile.family->first; std::log(g / 2.0) > u_lo; g *= profile.family->ratio) push(g);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ZetaEstimate tube_zeta_exact_line(const CompactSetDescriptor& set, Complex s, const NumericZetaConfig& cfg) {
    const auto profile = geometry::gap_profile(set);
    const Complex a = s - 1.0;
    auto integrand = [&](double u) { return std::exp(a * u) * exact_tube_at(set, profile, std::exp(u)); };

    // Push the lower end of the u-range down until the exponential tail is negligible.
    const double u_hi = std::log(cfg.delta);
    const double step = 8.0;
    double u_lo = u_hi - step;
    double crude = std::abs(integrand(u_hi)) * step;
    for (;;) {
        double upper = std::abs(integrand(u_lo + step));
        double lower = std::abs(integrand(u_lo));
        crude += lower * step;
        double rate = std::log(upper / lower) / step;
        if (rate > 0.02 && lower / rate < 1e-11 * crude) break;
        u_lo -= step;
        if (u_lo < -690.0) {
            throw Error(ErrorCode::QuadratureNonconvergent,
                        "integrand does not decay as t -> 0; Re s is likely at or below the abscissa of convergence");
        }
    }

    const auto kinks = kink_locations(profile, u_lo, u_hi);
    const auto& rule = quadrature::gauss_legendre(8);
    auto integrate = [&](std::size_t panels) {
        std::vector<double> edges;
        edges.reserve(panels + kinks.size() + 1);
        for (std::size_t i = 0; i <= panels; ++i) {
            edges.push_back(u_lo + (u_hi - u_lo) * static_cast<double>(i) / static_cast<double>(panels));
        }
        edges.insert(edges.end(), kinks.begin(), kinks.end());
        std::sort(edges.begin(), edges.end());
        Complex total = 0.0;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            double mid = 0.5 * (edges[i] + edges[i + 1]), half = 0.5 * (edges[i + 1] - edges[i]);
            if (half <= 0.0) continue;
            Complex panel = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) panel += rule.weights[k] * integrand(mid + half * rule.nodes[k]);
            total += half * panel;
        }
        return total;
    };

    std::size_t panels = std::max<std::size_t>(cfg.quadrature_points / rule.nodes.size(),
                                                static_cast<std::size_t>(std::ceil(u_hi - u_lo)));
    Complex previous = integrate(panels);
    for (int doubling = 0; doubling < 12; ++doubling) {
        panels *= 2;
        Complex current = integrate(panels);
        if (std::abs(current - previous) <= 1e-6 * std::abs(current)) return {current, 0.0};
        previous = current;
    }
    throw Error(ErrorCode::QuadratureNonconvergent, "composite Gauss-Legendre did not stabilise");
}

}  // namespace

ZetaEstimate tube_zeta_numeric(const CompactSetDescriptor& set, Complex s, const NumericZetaConfig& cfg) {
    cfg.validate();
    if (set.has_exact_tube()) return tube_zeta_exact_line(set, s, cfg);
    auto field = geometry::DistanceField::adaptive(set, cfg.delta, cfg.mc_samples, cfg.seed, cfg.mc_samples * 4 + 1000);
    return tube_zeta_from_field(field, s, cfg.delta);
}

double functional_equation_residual(const CompactSetDescriptor& set, Complex s, const NumericZetaConfig& cfg) {
    cfg.validate();
    const double n = static_cast<double>(set.ambient_dim());
    std::optional<ClosedFormZeta> closed;
    try {
        auto info = catalog_info(set);
        if (info.dimension && s.real() <= *info.dimension + 0.25) {
            throw Error(ErrorCode::InvalidArgument, "functional equation check needs Re s > dim + 0.25");
        }
        closed = catalog_zeta(set, cfg.delta);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoClosedForm && e.code() != ErrorCode::DeltaTooSmall) throw;
    }
    const Complex lhs = closed ? closed_form_eval(*closed, s) : distance_zeta_numeric(set, s, cfg).value;

    Complex rhs;
    const Complex delta_pow = std::exp((s - n) * std::log(cfg.delta));
    if (set.has_exact_tube()) {
        rhs = delta_pow * geometry::tube_volume(set, cfg.delta).volume + (n - s) * tube_zeta_numeric(set, s, cfg).value;
    } else {
        auto field = geometry::DistanceField::adaptive(set, cfg.delta, cfg.mc_samples, cfg.seed ^ kTubeStream,
                                                       cfg.mc_samples * 4 + 1000);
        rhs = delta_pow * field.tube(cfg.delta).volume + (n - s) * tube_zeta_from_field(field, s, cfg.delta).value;
    }
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

}  // namespace fractal::zeta
