#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fractal/compact_set.hpp"
#include "fractal/interval_union.hpp"

namespace fractal::geometry {

/// Euclidean distance d(x, A). Exact for every variant: the self-similar
/// sets descend into the unique complementary hole containing x, whose
/// boundary lies in A.
double distance_to_set(std::span<const double> x, const CompactSetDescriptor& set);

enum class TubeMethod { Exact1D, GridCount, MonteCarlo };

std::string to_string(TubeMethod m);
TubeMethod tube_method_from_string(const std::string& name);

struct TubeSample {
    double t = 0.0;
    double volume = 0.0;
    TubeMethod method = TubeMethod::Exact1D;
    std::optional<double> error_bound;
};

struct TubeOptions {
    /// Defaults to Exact1D when available, GridCount otherwise.
    std::optional<TubeMethod> method;
    /// Edge length of grid cells (GridCount).
    double cell_size = 1e-3;
    /// Requested number of jittered samples (MonteCarlo). Rounded to k^N strata.
    std::size_t mc_samples = 1'000'000;
    std::uint64_t seed = 0;
    /// Upper limit on grid cells or samples; exceeding it raises ResolutionTooCoarse.
    std::size_t budget = 200'000'000;
    /// When set, samples whose error_bound / volume exceeds this raise ResolutionTooCoarse.
    std::optional<double> max_relative_error;
};

/// Distances of d(., A) at the cells of a grid or at jittered random points of
/// a box. Built once and queried for any t inside the covered range.
class DistanceField {
public:
    /// Cell-centre distances over the bounding box of A grown by max_radius.
    static DistanceField grid(const CompactSetDescriptor& set, double max_radius, double cell_size,
                              std::size_t budget);
    /// One uniform point per stratum of a k^N partition of the box. Each of a
    /// fixed number of chunks seeds its own engine from (seed, chunk), so the
    /// field does not depend on the thread count.
    static DistanceField jittered(const CompactSetDescriptor& set, double max_radius, std::size_t samples,
                                  std::uint64_t seed, std::size_t budget);
    /// Weighted strata that start as a coarse k^N partition and are halved
    /// along every axis, level by level, wherever a cell centre lies within
    /// three cell diagonals of A or of the level set d = max_radius.
    /// Refinement stops at samples / 2 leaves; on the last level the closest
    /// cells go first. Each leaf holds an antithetic pair of uniform points
    /// (u and its mirror through the centre), each weighted by half the leaf
    /// volume.
    static DistanceField adaptive(const CompactSetDescriptor& set, double max_radius, std::size_t samples,
                                  std::uint64_t seed, std::size_t budget);

    TubeMethod method() const { return method_; }
    std::size_t size() const { return sample_count_; }
    double box_volume() const { return box_volume_; }
    double cell_volume() const { return box_volume_ / static_cast<double>(sample_count_); }
    /// Largest t for which the box is guaranteed to contain A_t.
    double max_radius() const { return max_radius_; }
    std::size_t dim() const { return dim_; }

    /// Distances in sample order (jittered) or cell order (grid).
    std::span<const double> distances() const { return raw_; }
    /// Volume represented by sample i.
    double weight(std::size_t i) const { return weights_.empty() ? cell_volume() : weights_[i]; }
    bool weighted() const { return !weights_.empty(); }

    TubeSample tube(double t) const;

private:
    TubeMethod method_ = TubeMethod::GridCount;
    std::vector<double> raw_;
    std::vector<double> sorted_;
    std::vector<double> weights_;
    // Prefix sums of w and w^2 in sorted order; weighted fields only.
    std::vector<double> cum_w_;
    std::vector<double> cum_w2_;
    std::size_t sample_count_ = 0;
    double box_volume_ = 0.0;
    double half_diagonal_ = 0.0;
    double max_radius_ = 0.0;
    std::size_t dim_ = 1;
};

/// |A_t| for one t > 0.
TubeSample tube_volume(const CompactSetDescriptor& set, double t, const TubeOptions& opts = {});

/// |A_t| for ascending t values, sharing one distance field for grid and
/// Monte Carlo methods.
std::vector<TubeSample> sample_tube_curve(const CompactSetDescriptor& set, std::span<const double> t_values,
                                          const TubeOptions& opts = {});

/// Exact |A_t| on the real line from the gap profile.
double exact_tube_volume_1d(const GapProfile& profile, double t);

/// Finite construction stage of a Cantor-like set as closed intervals; used to
/// cross-check the gap arithmetic with a literal sweep.
IntervalUnion cantor_stage(const CantorLike& c, unsigned depth);

/// Smallest construction depth whose remaining gaps are all shorter than 2t.
unsigned cantor_depth_for(const CantorLike& c, double t);

std::vector<double> log_spaced(double lo, double hi, std::size_t count);

}  // namespace fractal::geometry
