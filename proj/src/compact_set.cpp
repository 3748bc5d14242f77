#include "fractal/compact_set.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "fractal/error.hpp"

namespace fractal::geometry {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidDescriptor, what); }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Box points_box(std::size_t dim, const std::vector<Point>& pts) {
    if (dim < 1) invalid("ambient dimension must be at least 1");
    if (pts.empty()) invalid("point list is empty");
    Box b{std::vector<double>(dim, INFINITY), std::vector<double>(dim, -INFINITY)};
    for (const auto& p : pts) {
        if (p.size() != dim) invalid("point dimension does not match ambient dimension");
        for (std::size_t i = 0; i < dim; ++i) {
            if (!std::isfinite(p[i])) invalid("point coordinates must be finite");
            b.lo[i] = std::min(b.lo[i], p[i]);
            b.hi[i] = std::max(b.hi[i], p[i]);
        }
    }
    return b;
}

void validate_generator(const GeometricLengths& g) {
    if (!(g.first > 0.0) || !std::isfinite(g.first)) invalid("generator first length must be positive");
    if (!(g.ratio > 0.0 && g.ratio < 1.0)) invalid("generator ratio must lie in (0,1)");
    if (g.multiplicity < 1) invalid("generator multiplicity must be at least 1");
    if (!(g.multiplicity * g.ratio < 1.0)) invalid("generator lengths are not summable (multiplicity * ratio >= 1)");
}

}  // namespace

double Box::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

double Box::diameter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(s);
}

Box Box::expanded(double margin) const {
    Box b = *this;
    for (auto& v : b.lo) v -= margin;
    for (auto& v : b.hi) v += margin;
    return b;
}

double total_length(const GeometricLengths& g) { return g.first / (1.0 - g.multiplicity * g.ratio); }

double GapProfile::largest_gap() const {
    double m = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
    if (family) m = std::max(m, family->first);
    return m;
}

CompactSetDescriptor::CompactSetDescriptor(SetVariant variant) : variant_(std::move(variant)) {
    std::visit(overloaded{
                   [&](const PointSet& s) {
                       box_ = points_box(s.dim, s.points);
                       dim_ = s.dim;
                   },
                   [&](const PointCloud& s) {
                       box_ = points_box(s.dim, s.points);
                       dim_ = s.dim;
                   },
                   [&](const CantorLike& c) {
                       if (!(c.ratio > 0.0 && c.ratio < 0.5)) invalid("Cantor ratio must lie in (0, 1/2)");
                       if (!(c.scale > 0.0) || !std::isfinite(c.scale)) invalid("Cantor scale must be positive");
                       dim_ = 1;
                       box_ = Box{{0.0}, {c.scale}};
                   },
                   [&](const FractalStringBoundary& s) {
                       dim_ = 1;
                       if (s.generator && !s.lengths.empty()) invalid("give either explicit lengths or a generator, not both");
                       if (s.generator) {
                           validate_generator(*s.generator);
                           box_ = Box{{0.0}, {total_length(*s.generator)}};
                           return;
                       }
                       if (s.lengths.empty()) invalid("fractal string has no lengths");
                       double total = 0.0;
                       for (std::size_t i = 0; i < s.lengths.size(); ++i) {
                           double l = s.lengths[i];
                           if (!(l > 0.0) || !std::isfinite(l)) invalid("string lengths must be positive and finite");
                           if (i > 0 && l > s.lengths[i - 1]) invalid("string lengths must be nonincreasing");
                           total += l;
                       }
                       box_ = Box{{0.0}, {total}};
                   },
                   [&](const SierpinskiGasket&) {
                       dim_ = 2;
                       box_ = Box{{0.0, 0.0}, {1.0, std::sqrt(3.0) / 2.0}};
                   },
                   [&](const SierpinskiCarpet3D&) {
                       dim_ = 3;
                       box_ = Box{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
                   },
               },
               variant_);
}

CompactSetDescriptor CompactSetDescriptor::point(std::vector<double> p) {
    std::size_t dim = p.size();
    return CompactSetDescriptor(PointSet{dim, {std::move(p)}});
}

CompactSetDescriptor CompactSetDescriptor::cantor_string_boundary() {
    return CompactSetDescriptor(FractalStringBoundary{{}, GeometricLengths{1.0 / 3.0, 1.0 / 3.0, 2}});
}

std::string CompactSetDescriptor::kind() const {
    return std::visit(overloaded{
                          [](const PointSet&) { return std::string("point_set"); },
                          [](const CantorLike&) { return std::string("cantor"); },
                          [](const FractalStringBoundary&) { return std::string("string_boundary"); },
                          [](const SierpinskiGasket&) { return std::string("sierpinski_gasket"); },
                          [](const SierpinskiCarpet3D&) { return std::string("sierpinski_carpet_3d"); },
                          [](const PointCloud&) { return std::string("point_cloud"); },
                      },
                      variant_);
}

bool CompactSetDescriptor::has_exact_tube() const {
    if (const auto* ps = std::get_if<PointSet>(&variant_)) return ps->dim == 1;
    return std::holds_alternative<CantorLike>(variant_) || std::holds_alternative<FractalStringBoundary>(variant_);
}

GapProfile gap_profile(const CompactSetDescriptor& set) {
    GapProfile g;
    const auto& v = set.variant();
    if (const auto* ps = std::get_if<PointSet>(&v)) {
        if (ps->dim != 1) throw Error(ErrorCode::InvalidArgument, "gap profile needs a one-dimensional set");
        std::vector<double> xs;
        for (const auto& p : ps->points) xs.push_back(p[0]);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        g.hull = xs.back() - xs.front();
        for (std::size_t i = 1; i < xs.size(); ++i) g.gaps.push_back(xs[i] - xs[i - 1]);
        return g;
    }
    if (const auto* c = std::get_if<CantorLike>(&v)) {
        g.hull = c->scale;
        g.family = GeometricLengths{(1.0 - 2.0 * c->ratio) * c->scale, c->ratio, 2};
        return g;
    }
    if (const auto* s = std::get_if<FractalStringBoundary>(&v)) {
        g.hull = set.bounding_box().hi[0];
        if (s->generator) {
            g.family = s->generator;
        } else {
            g.gaps = s->lengths;
        }
        return g;
    }
    throw Error(ErrorCode::InvalidArgument, "gap profile needs a one-dimensional set");
}

}  // namespace fractal::geometry
