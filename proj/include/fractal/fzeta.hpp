#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "fractal/closed_form.hpp"
#include "fractal/compact_set.hpp"
#include "fractal/geometry.hpp"

namespace fractal::zeta {

struct NumericZetaConfig {
    double delta = 1.0;
    std::size_t mc_samples = 1'000'000;
    std::size_t quadrature_points = 64;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument unless delta > 0, mc_samples >= 1000 and
    /// quadrature_points >= 64.
    void validate() const;
};

struct ZetaEstimate {
    Complex value;
    /// 95% confidence half-width for Monte Carlo results, 0 for quadrature.
    double half_width = 0.0;
};

/// Known facts about a catalog set.
struct CatalogInfo {
    std::string name;
    std::optional<double> dimension;
    std::optional<double> oscillation_period;
    /// The closed form needs delta strictly above this.
    double delta_lower_bound = 0.0;
    double default_delta = 1.0;
    /// Upper end of the t-range where the pointwise tube formula is exact.
    double tube_formula_limit = 0.0;
};

/// Throws NoClosedForm for point clouds and sets without a recognised structure.
CatalogInfo catalog_info(const geometry::CompactSetDescriptor& set);

/// Closed form of the distance zeta function. Throws NoClosedForm or DeltaTooSmall.
ClosedFormZeta catalog_zeta(const geometry::CompactSetDescriptor& set, double delta);

/// Monte Carlo estimate of the distance zeta function over the bounding box of
/// A_delta, one jittered sample per stratum. Throws VarianceOverflow when a
/// single sample dominates the second moment.
ZetaEstimate distance_zeta_numeric(const geometry::CompactSetDescriptor& set, Complex s, const NumericZetaConfig& cfg);

/// Same estimator on a prebuilt field; the field radius must be at least delta.
ZetaEstimate distance_zeta_from_field(const geometry::DistanceField& field, Complex s, double delta);

/// Tube zeta function. One-dimensional sets integrate the exact tube function
/// in u = ln t by composite Gauss-Legendre with doubling; other sets
/// integrate the piecewise-constant tube function of a jittered distance
/// field exactly. Throws QuadratureNonconvergent.
ZetaEstimate tube_zeta_numeric(const geometry::CompactSetDescriptor& set, Complex s, const NumericZetaConfig& cfg);

ZetaEstimate tube_zeta_from_field(const geometry::DistanceField& field, Complex s, double delta);

/// |LHS - RHS| / (1 + |LHS|) for zeta(s) = delta^(s-N) |A_delta| + (N - s) tube_zeta(s).
/// LHS is the closed form when the catalog has one, the Monte Carlo estimate otherwise.
double functional_equation_residual(const geometry::CompactSetDescriptor& set, Complex s, const NumericZetaConfig& cfg);

/// Volume of the unit ball in R^n.
double unit_ball_volume(std::size_t n);

}  // namespace fractal::zeta
