#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fractal::geometry {

struct Interval {
    double lo;
    double hi;
};

/// Sorted union of disjoint open intervals on the real line.
///
/// Degenerate intervals (lo == hi) are accepted on construction so that a
/// finite point set can be encoded directly; they carry zero length and are
/// merged away as soon as they are fattened.
class IntervalUnion {
public:
    IntervalUnion() = default;

    /// Builds a union from arbitrary (possibly overlapping, unsorted) intervals.
    static IntervalUnion from_intervals(std::vector<Interval> intervals);

    /// Degenerate intervals {p, p} for each point.
    static IntervalUnion from_points(std::span<const double> points);

    std::span<const Interval> intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    bool empty() const { return intervals_.empty(); }

    double total_length() const;

private:
    std::vector<Interval> intervals_;
};

/// Union of (a_i - t, b_i + t), merged by a sweep over the sorted endpoints.
IntervalUnion fatten_intervals(const IntervalUnion& base, double t);

}  // namespace fractal::geometry
