#include "fractal/interval_union.hpp"

#include <algorithm>
#include <cmath>

#include "fractal/error.hpp"

namespace fractal::geometry {

namespace {

// Intervals must already be sorted by lower end. Open intervals that only
// touch at an endpoint stay separate unless both are degenerate at that point.
std::vector<Interval> merge_sorted(const std::vector<Interval>& sorted) {
    std::vector<Interval> out;
    out.reserve(sorted.size());
    for (const auto& iv : sorted) {
        if (!out.empty()) {
            auto& last = out.back();
            bool overlaps = iv.lo < last.hi || (iv.lo == last.hi && (iv.lo == iv.hi || last.lo == last.hi));
            if (overlaps) {
                last.hi = std::max(last.hi, iv.hi);
                continue;
            }
        }
        out.push_back(iv);
    }
    return out;
}

}  // namespace

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.hi < iv.lo) {
            throw Error(ErrorCode::InvalidArgument, "interval endpoints must be finite with lo <= hi");
        }
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
    IntervalUnion u;
    u.intervals_ = merge_sorted(intervals);
    return u;
}

IntervalUnion IntervalUnion::from_points(std::span<const double> points) {
    std::vector<Interval> ivs;
    ivs.reserve(points.size());
    for (double p : points) ivs.push_back({p, p});
    return from_intervals(std::move(ivs));
}

double IntervalUnion::total_length() const {
    double total = 0.0;
    for (const auto& iv : intervals_) total += iv.hi - iv.lo;
    return total;
}

IntervalUnion fatten_intervals(const IntervalUnion& base, double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "fattening radius must be positive");
    std::vector<Interval> grown;
    grown.reserve(base.size());
    // Input is sorted and fattening preserves the order of lower ends.
    for (const auto& iv : base.intervals()) grown.push_back({iv.lo - t, iv.hi + t});
    return IntervalUnion::from_intervals(std::move(grown));
}

}  // namespace fractal::geometry
