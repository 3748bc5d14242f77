#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fractal/cdim.hpp"
#include "fractal/closed_form.hpp"
#include "fractal/compact_set.hpp"
#include "fractal/geometry.hpp"

namespace fractal::tube {

using Complex = std::complex<double>;

/// Truncated residue expansion of |A_t|: every real pole plus the lattice
/// poles with |k| <= truncation in each family.
struct TubeFormulaSeries {
    std::size_t ambient_dim = 1;
    std::vector<cdim::Pole> poles;
    int truncation = 50;
    std::optional<zeta::ClosedFormZeta> source;
    /// The formula is exact for 0 < t < validity_limit.
    double validity_limit = INFINITY;
};

/// Collects the poles of a closed form. Throws DimensionCollision when a pole
/// sits on the ambient dimension.
TubeFormulaSeries build_series(const zeta::ClosedFormZeta& zeta, int truncation, double validity_limit = INFINITY);

/// Residue of t^(N-s) / (N-s) * zeta(s) at the pole. Higher-order poles are
/// integrated against their principal part on a small circle.
Complex tube_term(const cdim::Pole& pole, double t, std::size_t ambient_dim);

/// Real sum of the series at t. Throws OutOfValidityRange outside
/// (0, validity_limit) and InvalidArgument if the imaginary parts fail to
/// cancel (a series that is not conjugate closed).
double tube_formula_truncated(const TubeFormulaSeries& series, double t);

/// Size of the omitted lattice terms, extrapolated from the first omitted
/// term and the one at twice its index with a fitted power-law decay. Zero
/// for a series without lattice families.
double truncation_tail_estimate(const TubeFormulaSeries& series, double t);

/// residue / (N - D). Throws NonpositiveContent for a nonpositive residue and
/// InvalidArgument unless D < N.
double minkowski_content_from_residue(double residue_at_d, std::size_t ambient_dim, double dimension);

struct ContentBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Extremes of |A_t| / t^(N-r) over the smallest decade of t. Needs at least
/// 16 samples spanning two decades; throws InsufficientSamples otherwise.
ContentBounds content_bounds_estimate(std::span<const geometry::TubeSample> samples, double r, std::size_t ambient_dim);

/// N minus the least-squares slope of ln |A_t| against ln t over the smallest decade.
double box_dimension_fit(std::span<const geometry::TubeSample> samples, std::size_t ambient_dim);

struct ComparisonRow {
    double t = 0.0;
    double direct = 0.0;
    double formula = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    double oracle_error_bound = 0.0;
    double tail_estimate = 0.0;
};

struct TubeComparison {
    std::string set_id;
    int truncation = 0;
    geometry::TubeMethod oracle_method = geometry::TubeMethod::Exact1D;
    std::vector<ComparisonRow> rows;

    double max_rel_error() const;
    /// True when every discrepancy is covered by the oracle error bound plus the
    /// tail estimate, with a few ulps of slack for exact oracles.
    bool within_error_budget() const;
};

TubeComparison compare_tube_formula(const geometry::CompactSetDescriptor& set, const TubeFormulaSeries& series,
                                    std::span<const double> t_values, const geometry::TubeOptions& oracle = {});

enum class Verdict { Measurable, NotMeasurable, Inconclusive };
std::string to_string(Verdict v);

/// What is known about the pole search behind a verdict.
struct MeasurabilityEvidence {
    /// Half-height of the band in which poles were collected.
    std::optional<double> searched_half_height;
    /// Period of the lattice family on the critical line, if any.
    std::optional<double> oscillation_period;
    std::optional<cdim::LanguidityEstimate> languidity;
};

struct MeasurabilityVerdict {
    Verdict verdict = Verdict::Inconclusive;
    double dimension = 0.0;
    std::vector<cdim::Pole> critical_line_poles;
    std::optional<double> content;
    /// The screen hypothesis is never verified, only the growth exponent is probed.
    bool hypotheses_assumed = true;
    MeasurabilityEvidence evidence;
    std::string reason;
};

/// Measurable iff exactly one pole lies within tol of Re s = D and it is real
/// and simple. Two or more such poles, or a nonsimple one, give NotMeasurable.
/// A pole between tol and 10 tol from the line, a band narrower than one
/// oscillation period, or a missing languidity probe give Inconclusive.
MeasurabilityVerdict measurability_criterion(std::span<const cdim::Pole> poles, double dimension,
                                             std::size_t ambient_dim, double tol,
                                             const MeasurabilityEvidence& evidence = {});

/// Collects the closed-form poles with |Im s| <= half_height, probes the growth
/// of zeta along Re s = D + 1/2 at 32 heights in [10, 1000] and applies the
/// criterion to the result.
MeasurabilityVerdict measurability_from_closed_form(const zeta::ClosedFormZeta& zeta, double dimension,
                                                    double half_height, double tol = 1e-6);

}  // namespace fractal::tube
