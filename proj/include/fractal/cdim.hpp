#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fractal/closed_form.hpp"

namespace fractal::cdim {

using Complex = std::complex<double>;

/// A complex dimension with its principal part.
struct Pole {
    Complex location;
    int order = 1;
    /// Coefficient of (s - w)^-1.
    Complex residue;
    /// Coefficients of (s - w)^-2, (s - w)^-3, ... for higher-order poles.
    std::vector<Complex> principal_part;
};

/// Piecewise-linear screen tau -> S(tau) sampled at increasing tau.
struct ScreenProfile {
    std::vector<double> tau;
    std::vector<double> abscissa;

    double at(double t) const;
    double lipschitz() const;
    double sup() const;
};

/// Region of C searched for poles: Re s >= S(Im s) and |Im s| <= imag_half_height.
struct Window {
    double screen_sup = -INFINITY;
    std::optional<ScreenProfile> screen_profile;
    double imag_half_height = 0.0;

    static Window band(double imag_half_height, double screen_abscissa = -INFINITY);
    bool contains(Complex s) const;
    /// Throws InvalidArgument if the screen crosses the critical line.
    void validate(double critical_abscissa) const;
};

struct Rect {
    double re_min, re_max, im_min, im_max;
};

/// f with an optional exact derivative; central differences are used otherwise.
struct Meromorphic {
    std::function<Complex(Complex)> value;
    std::function<Complex(Complex)> derivative;

    Complex derivative_at(Complex s) const;
};

Meromorphic as_meromorphic(const zeta::ClosedFormZeta& zeta);

struct LanguidityEstimate {
    double kappa = 0.0;
    std::vector<double> sample_heights;
    double constant = 0.0;
    std::optional<double> strong_base;
};

/// log_m r + (2 pi / ln m) k i for every k with the point inside the window,
/// sorted by (Re, Im).
std::vector<Complex> lattice_poles(double m, double r, const Window& window);

/// Poles in the rectangle by recursive subdivision. Each cell is classified
/// by the winding number of f (zeros minus poles) and the contour integral of
/// f itself (sum of residues); cells holding poles are shrunk until the
/// winding number isolates them, located through the moment of s f'/f and
/// polished by Newton steps on 1/f. Throws BoundaryPole or NonIsolable.
std::vector<Pole> find_poles_argument_principle(const Meromorphic& f, const Rect& rect, double tol);
std::vector<Pole> find_poles_argument_principle(const zeta::ClosedFormZeta& zeta, const Rect& rect, double tol);

/// (1 / 2 pi i) times the integral of f over |s - omega| = radius by the
/// trapezoidal rule. The radius shrinks to half the distance to the nearest
/// entry of other_poles. Throws ContourContaminated if 256 and 512 nodes disagree by more than tol.
Complex residue_contour(const std::function<Complex(Complex)>& f, Complex omega, double radius,
                        std::span<const Complex> other_poles = {}, double tol = 1e-10);

/// Residue and order from the term algebra of the closed form. Throws NotAPole.
Pole residues_closed_form(const zeta::ClosedFormZeta& zeta, Complex omega);

/// All genuine poles of the closed form inside the window (removable
/// candidates dropped), sorted by (Re, Im).
std::vector<Pole> closed_form_poles(const zeta::ClosedFormZeta& zeta, const Window& window);

/// Least-squares slope of log max(|f(sigma + iT)|, |f(sigma - iT)|) against log T.
/// Heights within 1 of the ordinate of a known pole lying within 1 of the
/// line are skipped. Throws PoleOnLine if a sample is within 1e-3 of a pole.
LanguidityEstimate languidity_probe(const std::function<Complex(Complex)>& f, double screen_abscissa,
                                    std::span<const double> heights, std::span<const Complex> known_poles = {});

}  // namespace fractal::cdim
