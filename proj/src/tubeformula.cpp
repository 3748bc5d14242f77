#include "fractal/tubeformula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fractal/error.hpp"

namespace fractal::tube {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_no_collision(Complex omega, std::size_t n) {
    if (std::abs(static_cast<double>(n) - omega) < 1e-10) {
        throw Error(ErrorCode::DimensionCollision, "pole coincides with the ambient dimension");
    }
}

// The smallest decade of t, sorted ascending.
std::vector<geometry::TubeSample> smallest_decade(std::span<const geometry::TubeSample> samples) {
    if (samples.size() < 16) throw Error(ErrorCode::InsufficientSamples, "need at least 16 tube samples");
    std::vector<geometry::TubeSample> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    const double lo = sorted.front().t, hi = sorted.back().t;
    if (!(lo > 0.0) || hi < 100.0 * lo * (1.0 - 1e-9)) {
        throw Error(ErrorCode::InsufficientSamples, "tube samples must span at least two decades");
    }
    std::vector<geometry::TubeSample> out;
    for (const auto& s : sorted) {
        if (s.t <= 10.0 * lo * (1.0 + 1e-9)) out.push_back(s);
    }
    if (out.size() < 3) throw Error(ErrorCode::InsufficientSamples, "fewer than 3 samples in the smallest decade");
    for (const auto& s : out) {
        if (!(s.volume > 0.0)) throw Error(ErrorCode::InsufficientSamples, "tube volume must be positive");
    }
    return out;
}

Complex simple_term(Complex residue, Complex omega, double t, std::size_t n) {
    const Complex e = static_cast<double>(n) - omega;
    return residue * std::exp(e * std::log(t)) / e;
}

// Magnitude of the tube term of the lattice pole with index k, or the next genuine pole after it.
double lattice_term_size(const zeta::ClosedFormZeta& z, const zeta::Lattice& lat, long k, double t, long* used) {
    for (long j = k; j < k + 8; ++j) {
        Complex w(lat.real_part(), static_cast<double>(j) * lat.period());
        try {
            auto pole = cdim::residues_closed_form(z, w);
            *used = j;
            return std::abs(tube_term(pole, t, z.ambient_dim));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAPole) throw;
        }
    }
    *used = k;
    return 0.0;
}

double power_tail(double first, long k1, double second, long k2) {
    if (first == 0.0) return 0.0;
    if (second == 0.0) return 2.0 * first;
    const double p = std::log(first / second) / std::log(static_cast<double>(k2) / static_cast<double>(k1));
    if (!(p > 1.05)) return INFINITY;
    // sum over k >= k1 of first (k / k1)^-p, both signs of k
    return 2.0 * first * (1.0 + static_cast<double>(k1) / (p - 1.0));
}

}  // namespace

TubeFormulaSeries build_series(const zeta::ClosedFormZeta& zeta, int truncation, double validity_limit) {
    if (truncation < 0) throw Error(ErrorCode::InvalidArgument, "truncation must be nonnegative");
    TubeFormulaSeries series;
    series.ambient_dim = zeta.ambient_dim;
    series.truncation = truncation;
    series.source = zeta;
    series.validity_limit = validity_limit;

    const auto lats = zeta::lattices(zeta);
    double height = 0.0;
    for (const auto& l : lats) height = std::max(height, (truncation + 0.5) * l.period());
    for (Complex w : zeta::candidate_poles(zeta, height)) {
        if (w.imag() != 0.0) {
            bool keep = false;
            for (const auto& l : lats) {
                if (std::abs(w.real() - l.real_part()) < 1e-9 && std::abs(w.imag()) <= (truncation + 0.5) * l.period()) {
                    keep = true;
                }
            }
            if (!keep) continue;
        }
        try {
            auto pole = cdim::residues_closed_form(zeta, w);
            require_no_collision(pole.location, series.ambient_dim);
            series.poles.push_back(std::move(pole));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAPole) throw;
        }
    }
    return series;
}

Complex tube_term(const cdim::Pole& pole, double t, std::size_t ambient_dim) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
    require_no_collision(pole.location, ambient_dim);
    if (pole.order == 1 || pole.principal_part.empty()) return simple_term(pole.residue, pole.location, t, ambient_dim);

    const double n = static_cast<double>(ambient_dim);
    const double radius = std::min(0.05, 0.5 * std::abs(n - pole.location));
    const double log_t = std::log(t);
    constexpr std::size_t nodes = 512;
    Complex sum = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        Complex e = std::polar(radius, kTwoPi * static_cast<double>(j) / static_cast<double>(nodes));
        Complex s = pole.location + e;
        Complex principal = pole.residue / e;
        Complex power = e;
        for (Complex a : pole.principal_part) {
            power *= e;
            principal += a / power;
        }
        sum += std::exp((n - s) * log_t) / (n - s) * principal * e;
    }
    return sum / static_cast<double>(nodes);
}

double tube_formula_truncated(const TubeFormulaSeries& series, double t) {
    if (!(t > 0.0) || !(t < series.validity_limit)) {
        throw Error(ErrorCode::OutOfValidityRange, "t lies outside the range where the tube formula holds");
    }
    Complex total = 0.0;
    for (const auto& p : series.poles) total += tube_term(p, t, series.ambient_dim);
    if (std::abs(total.imag()) > 1e-10 * std::abs(total)) {
        throw Error(ErrorCode::InvalidArgument, "imaginary parts do not cancel; the pole list is not conjugate closed");
    }
    return total.real();
}

double truncation_tail_estimate(const TubeFormulaSeries& series, double t) {
    if (series.source) {
        double tail = 0.0;
        for (const auto& lat : zeta::lattices(*series.source)) {
            long k1 = 0, k2 = 0;
            double first = lattice_term_size(*series.source, lat, series.truncation + 1, t, &k1);
            double second = lattice_term_size(*series.source, lat, 2 * k1, t, &k2);
            tail += power_tail(first, k1, second, k2);
        }
        return tail;
    }
    // Without a source, extrapolate from the outermost terms of the series itself.
    std::vector<std::pair<double, double>> upper;  // (Im, |term|)
    for (const auto& p : series.poles) {
        if (p.location.imag() > 0.0) upper.emplace_back(p.location.imag(), std::abs(tube_term(p, t, series.ambient_dim)));
    }
    if (upper.empty()) return 0.0;
    std::sort(upper.begin(), upper.end());
    if (upper.size() < 2) return 2.0 * upper.back().second;
    const auto& outer = upper.back();
    const auto& inner = upper[upper.size() / 2 - 1 + (upper.size() % 2)];
    const double period = upper.front().first;
    const long k_outer = std::lround(outer.first / period), k_inner = std::lround(inner.first / period);
    if (k_inner >= k_outer) return 2.0 * outer.second;
    // decay fitted inward, applied from the first omitted index
    const double p = std::log(inner.second / outer.second) / std::log(static_cast<double>(k_outer) / k_inner);
    if (!(p > 1.05)) return INFINITY;
    const double first = outer.second * std::pow(static_cast<double>(k_outer + 1) / k_outer, -p);
    return 2.0 * first * (1.0 + static_cast<double>(k_outer + 1) / (p - 1.0));
}

double minkowski_content_from_residue(double residue_at_d, std::size_t ambient_dim, double dimension) {
    if (!(dimension < static_cast<double>(ambient_dim))) {
        throw Error(ErrorCode::InvalidArgument, "content needs D < N");
    }
    if (!(residue_at_d > 0.0)) throw Error(ErrorCode::NonpositiveContent, "residue at D must be positive");
    return residue_at_d / (static_cast<double>(ambient_dim) - dimension);
}

ContentBounds content_bounds_estimate(std::span<const geometry::TubeSample> samples, double r, std::size_t ambient_dim) {
    auto decade = smallest_decade(samples);
    ContentBounds b{INFINITY, -INFINITY};
    const double e = static_cast<double>(ambient_dim) - r;
    for (const auto& s : decade) {
        double q = s.volume / std::pow(s.t, e);
        b.lower = std::min(b.lower, q);
        b.upper = std::max(b.upper, q);
    }
    return b;
}

double box_dimension_fit(std::span<const geometry::TubeSample> samples, std::size_t ambient_dim) {
    auto decade = smallest_decade(samples);
    const double n = static_cast<double>(decade.size());
    double mx = 0.0, my = 0.0;
    for (const auto& s : decade) {
        mx += std::log(s.t) / n;
        my += std::log(s.volume) / n;
    }
    double sxx = 0.0, sxy = 0.0;
    for (const auto& s : decade) {
        double dx = std::log(s.t) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(s.volume) - my);
    }
    return static_cast<double>(ambient_dim) - sxy / sxx;
}

double TubeComparison::max_rel_error() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.rel_error);
    return m;
}

bool TubeComparison::within_error_budget() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const ComparisonRow& r) {
                           const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(r.direct);
                           return r.abs_error <= r.oracle_error_bound + r.tail_estimate + rounding;
                       });
}

TubeComparison compare_tube_formula(const geometry::CompactSetDescriptor& set, const TubeFormulaSeries& series,
                                    std::span<const double> t_values, const geometry::TubeOptions& oracle) {
    if (set.ambient_dim() != series.ambient_dim) {
        throw Error(ErrorCode::InvalidArgument, "series and set live in different dimensions");
    }
    TubeComparison cmp;
    cmp.set_id = set.kind();
    cmp.truncation = series.truncation;
    auto samples = geometry::sample_tube_curve(set, t_values, oracle);
    if (!samples.empty()) cmp.oracle_method = samples.front().method;
    for (const auto& s : samples) {
        ComparisonRow row;
        row.t = s.t;
        row.direct = s.volume;
        row.formula = tube_formula_truncated(series, s.t);
        row.abs_error = std::abs(row.formula - row.direct);
        row.rel_error = row.abs_error / std::max(row.direct, std::numeric_limits<double>::epsilon());
        row.oracle_error_bound = s.error_bound.value_or(0.0);
        row.tail_estimate = truncation_tail_estimate(series, s.t);
        cmp.rows.push_back(row);
    }
    return cmp;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Measurable:
            return "Measurable";
        case Verdict::NotMeasurable:
            return "NotMeasurable";
        case Verdict::Inconclusive:
            return "Inconclusive";
    }
    return "Inconclusive";
}

MeasurabilityVerdict measurability_criterion(std::span<const cdim::Pole> poles, double dimension,
                                             std::size_t ambient_dim, double tol,
                                             const MeasurabilityEvidence& evidence) {
    MeasurabilityVerdict out;
    out.dimension = dimension;
    out.evidence = evidence;
    auto inconclusive = [&](std::string why) {
        out.verdict = Verdict::Inconclusive;
        out.reason = std::move(why);
        return out;
    };
    if (!(tol > 0.0)) return inconclusive("tolerance must be positive");
    if (!(dimension < static_cast<double>(ambient_dim))) return inconclusive("the criterion needs D < N");

    for (const auto& p : poles) {
        const double gap = std::abs(p.location.real() - dimension);
        if (gap <= tol) {
            out.critical_line_poles.push_back(p);
        } else if (gap <= 10.0 * tol) {
            return inconclusive("a pole lies near the tolerance boundary of the critical line");
        }
    }
    std::sort(out.critical_line_poles.begin(), out.critical_line_poles.end(), [](const auto& a, const auto& b) {
        return a.location.imag() < b.location.imag();
    });
    if (!evidence.languidity) return inconclusive("languidity was not probed");
    if (out.critical_line_poles.empty()) return inconclusive("no pole on the critical line; D does not match the pole data");

    const auto& crit = out.critical_line_poles;
    const bool nonsimple = std::any_of(crit.begin(), crit.end(), [](const auto& p) { return p.order > 1; });
    if (crit.size() >= 2 || nonsimple) {
        out.verdict = Verdict::NotMeasurable;
        out.reason = crit.size() >= 2 ? "several poles on the critical line" : "the pole at D is not simple";
        return out;
    }
    const auto& only = crit.front();
    if (std::abs(only.location.imag()) > tol) return inconclusive("the only critical-line pole is not real");
    if (evidence.oscillation_period &&
        !(evidence.searched_half_height && *evidence.searched_half_height >= *evidence.oscillation_period)) {
        return inconclusive("band searched is narrower than one oscillation period");
    }
    if (!(only.residue.real() > 0.0)) return inconclusive("residue at D is not positive");
    out.verdict = Verdict::Measurable;
    out.content = minkowski_content_from_residue(only.residue.real(), ambient_dim, dimension);
    out.reason = "D is the only pole on the critical line and it is simple";
    return out;
}

MeasurabilityVerdict measurability_from_closed_form(const zeta::ClosedFormZeta& zeta, double dimension,
                                                    double half_height, double tol) {
    auto poles = cdim::closed_form_poles(zeta, cdim::Window::band(half_height));
    MeasurabilityEvidence evidence;
    evidence.searched_half_height = half_height;
    for (const auto& l : zeta::lattices(zeta)) {
        if (std::abs(l.real_part() - dimension) <= tol) evidence.oscillation_period = l.period();
    }
    std::vector<Complex> known;
    for (const auto& p : poles) known.push_back(p.location);
    const auto heights = geometry::log_spaced(10.0, 1000.0, 32);
    evidence.languidity = cdim::languidity_probe([&](Complex s) { return zeta::evaluate_unchecked(zeta, s); },
                                                 dimension + 0.5, heights, known);
    return measurability_criterion(poles, dimension, zeta.ambient_dim, tol, evidence);
}

}  // namespace fractal::tube
