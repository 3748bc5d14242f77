#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace fractal::zeta {

using Complex = std::complex<double>;

/// Denominator factor (m^s - r); its zeros form the family log_m r + (2 pi / ln m) i Z.
struct Lattice {
    double m = 2.0;
    double r = 3.0;

    double real_part() const;
    double period() const;

    bool operator==(const Lattice&) const = default;
};

/// amplitude * base_scale^(-s) / (prod_i (s - root_i) * (m^s - r)).
struct LatticeTerm {
    double amplitude = 0.0;
    double base_scale = 1.0;
    std::vector<double> denominator_roots;
    std::optional<Lattice> lattice;

    bool operator==(const LatticeTerm&) const = default;
};

/// coefficient * delta^(s - delta_power_shift) / (s - pole_location).
struct ElementaryTerm {
    double coefficient = 0.0;
    int delta_power_shift = 0;
    double pole_location = 0.0;

    bool operator==(const ElementaryTerm&) const = default;
};

/// Meromorphic closed form of a distance zeta function restricted to the two
/// term shapes above. All complex powers use real positive bases.
struct ClosedFormZeta {
    std::size_t ambient_dim = 1;
    double delta = 1.0;
    std::vector<LatticeTerm> lattice_terms;
    std::vector<ElementaryTerm> elementary_terms;

    bool operator==(const ClosedFormZeta&) const = default;
};

/// Throws NearPole within 1e-12 of a candidate pole.
Complex closed_form_eval(const ClosedFormZeta& zeta, Complex s);

/// No pole-proximity check; callers that sample near poles (contours, the
/// argument principle) use these.
Complex evaluate_unchecked(const ClosedFormZeta& zeta, Complex s);
Complex derivative_unchecked(const ClosedFormZeta& zeta, Complex s);

/// s -> lambda^s * zeta(s), with delta replaced by lambda * delta.
ClosedFormZeta scale_zeta(const ClosedFormZeta& zeta, double lambda);

/// Candidate singularities: denominator roots, elementary pole locations and
/// lattice points with |Im| <= imag_half_height. Some may be removable.
std::vector<Complex> candidate_poles(const ClosedFormZeta& zeta, double imag_half_height);

/// Distance from s to the nearest candidate singularity (lattice families
/// are checked modulo their period, so this is exact for any Im s).
double distance_to_candidates(const ClosedFormZeta& zeta, Complex s);

/// Lattices that occur in the representation, deduplicated.
std::vector<Lattice> lattices(const ClosedFormZeta& zeta);

}  // namespace fractal::zeta
