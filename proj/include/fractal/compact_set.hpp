#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fractal::geometry {

using Point = std::vector<double>;

/// Finite set of points in R^N.
struct PointSet {
    std::size_t dim = 1;
    std::vector<Point> points;
};

/// Two-piece self-similar Cantor set on [0, scale]: each interval keeps its
/// outer pieces of relative length `ratio` and drops the open middle.
struct CantorLike {
    double ratio = 1.0 / 3.0;
    double scale = 1.0;
};

/// Lengths first * ratio^n, each repeated multiplicity^n times (n >= 0).
struct GeometricLengths {
    double first = 1.0 / 3.0;
    double ratio = 1.0 / 3.0;
    unsigned multiplicity = 2;
};

/// Boundary set {a_k = sum_{j>=k} l_j} U {0} of a fractal string. The string is
/// either an explicit finite list or a self-similar geometric family.
struct FractalStringBoundary {
    std::vector<double> lengths;
    std::optional<GeometricLengths> generator;
};

/// Unit-side gasket with vertices (0,0), (1,0), (1/2, sqrt(3)/2).
struct SierpinskiGasket {};

/// Unit cube with the open middle cube removed recursively (26 kept of 27).
struct SierpinskiCarpet3D {};

/// Measured data; never receives a closed-form zeta.
struct PointCloud {
    std::size_t dim = 1;
    std::vector<Point> points;
};

using SetVariant = std::variant<PointSet, CantorLike, FractalStringBoundary, SierpinskiGasket,
                                SierpinskiCarpet3D, PointCloud>;

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    double volume() const;
    double diameter() const;
    Box expanded(double margin) const;
};

/// Immutable description of a compact set A in R^N. Construction validates
/// the variant's invariants and throws InvalidDescriptor on failure.
class CompactSetDescriptor {
public:
    explicit CompactSetDescriptor(SetVariant variant);

    static CompactSetDescriptor point(std::vector<double> p);
    static CompactSetDescriptor middle_third_cantor() { return CompactSetDescriptor(CantorLike{}); }
    static CompactSetDescriptor cantor_string_boundary();
    static CompactSetDescriptor gasket() { return CompactSetDescriptor(SierpinskiGasket{}); }
    static CompactSetDescriptor carpet() { return CompactSetDescriptor(SierpinskiCarpet3D{}); }

    std::size_t ambient_dim() const { return dim_; }
    const SetVariant& variant() const { return variant_; }
    const Box& bounding_box() const { return box_; }
    double diameter() const { return box_.diameter(); }

    /// Short identifier used in reports, e.g. "sierpinski_gasket".
    std::string kind() const;

    /// True when tube volumes are computed exactly on the real line.
    bool has_exact_tube() const;

private:
    SetVariant variant_;
    std::size_t dim_ = 1;
    Box box_;
};

/// Gaps of a one-dimensional compact set: finitely many explicit gaps plus an
/// optional self-similar family. Tube volume is hull + 2t - sum (g - 2t)_+.
struct GapProfile {
    double hull = 0.0;
    std::vector<double> gaps;
    std::optional<GeometricLengths> family;

    double largest_gap() const;
};

/// Only defined for the one-dimensional variants.
GapProfile gap_profile(const CompactSetDescriptor& set);

double total_length(const GeometricLengths& g);

}  // namespace fractal::geometry
