#include "fractal/cdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fractal/error.hpp"
#include "fractal/quadrature.hpp"

namespace fractal::cdim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kTwoPiI(0.0, kTwoPi);

bool by_re_im(Complex a, Complex b) {
    const double scale = 1e-9 * (1.0 + std::max(std::abs(a.real()), std::abs(b.real())));
    if (std::abs(a.real() - b.real()) > scale) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Newton noise around real poles leaves components of order 1e-30.
Complex snap(Complex s) {
    const double floor = 1e-14 * (1.0 + std::abs(s));
    return {std::abs(s.real()) < floor ? 0.0 : s.real(), std::abs(s.imag()) < floor ? 0.0 : s.imag()};
}

// Trapezoidal rule for (1/2 pi i) * contour integral of f(s) (s - w)^power on a circle.
Complex circle_moment(const std::function<Complex(Complex)>& f, Complex w, double radius, int power, std::size_t nodes) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
        double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(nodes);
        Complex e = std::polar(1.0, theta);
        Complex ds_over = radius * e;  // s - w
        Complex term = f(w + ds_over) * ds_over;
        for (int p = 0; p < power; ++p) term *= ds_over;
        sum += term;
    }
    return sum / static_cast<double>(nodes);
}

}  // namespace

double ScreenProfile::at(double t) const {
    if (tau.empty()) return -INFINITY;
    if (t <= tau.front()) return abscissa.front();
    if (t >= tau.back()) return abscissa.back();
    auto it = std::upper_bound(tau.begin(), tau.end(), t);
    std::size_t i = static_cast<std::size_t>(it - tau.begin());
    double w = (t - tau[i - 1]) / (tau[i] - tau[i - 1]);
    return abscissa[i - 1] + w * (abscissa[i] - abscissa[i - 1]);
}

double ScreenProfile::lipschitz() const {
    double lip = 0.0;
    for (std::size_t i = 1; i < tau.size(); ++i) {
        lip = std::max(lip, std::abs(abscissa[i] - abscissa[i - 1]) / (tau[i] - tau[i - 1]));
    }
    return lip;
}

double ScreenProfile::sup() const { return abscissa.empty() ? -INFINITY : *std::max_element(abscissa.begin(), abscissa.end()); }

Window Window::band(double imag_half_height, double screen_abscissa) {
    Window w;
    w.imag_half_height = imag_half_height;
    w.screen_sup = screen_abscissa;
    return w;
}

bool Window::contains(Complex s) const {
    if (std::abs(s.imag()) > imag_half_height * (1.0 + 1e-12)) return false;
    double screen = screen_profile ? screen_profile->at(s.imag()) : screen_sup;
    return s.real() >= screen;
}

void Window::validate(double critical_abscissa) const {
    if (!(imag_half_height >= 0.0)) throw Error(ErrorCode::InvalidArgument, "window height must be nonnegative");
    if (screen_sup > critical_abscissa) throw Error(ErrorCode::InvalidArgument, "screen lies right of the critical line");
    if (screen_profile) {
        const auto& p = *screen_profile;
        if (p.tau.size() != p.abscissa.size() || p.tau.empty()) throw Error(ErrorCode::InvalidArgument, "malformed screen profile");
        for (std::size_t i = 1; i < p.tau.size(); ++i) {
            if (!(p.tau[i] > p.tau[i - 1])) throw Error(ErrorCode::InvalidArgument, "screen samples must be increasing in tau");
        }
        if (p.sup() > critical_abscissa) throw Error(ErrorCode::InvalidArgument, "screen lies right of the critical line");
        if (!std::isfinite(p.lipschitz())) throw Error(ErrorCode::InvalidArgument, "screen is not Lipschitz");
    }
}

Complex Meromorphic::derivative_at(Complex s) const {
    if (derivative) return derivative(s);
    const double h = 1e-6 * (1.0 + std::abs(s));
    return (value(s + h) - value(s - h)) / (2.0 * h);
}

Meromorphic as_meromorphic(const zeta::ClosedFormZeta& zeta) {
    return {[zeta](Complex s) { return zeta::evaluate_unchecked(zeta, s); },
            [zeta](Complex s) { return zeta::derivative_unchecked(zeta, s); }};
}

std::vector<Complex> lattice_poles(double m, double r, const Window& window) {
    if (!(m > 1.0) || !(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "lattice needs m > 1 and r > 0");
    const double re = std::log(r) / std::log(m);
    const double period = kTwoPi / std::log(m);
    const auto kmax = static_cast<long>(std::floor(window.imag_half_height / period + 1e-12));
    std::vector<Complex> out;
    for (long k = -kmax; k <= kmax; ++k) {
        Complex w(re, static_cast<double>(k) * period);
        if (window.contains(w)) out.push_back(w);
    }
    std::sort(out.begin(), out.end(), by_re_im);
    return out;
}

Complex residue_contour(const std::function<Complex(Complex)>& f, Complex omega, double radius,
                        std::span<const Complex> other_poles, double tol) {
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "contour radius must be positive");
    double r = radius;
    for (Complex p : other_poles) {
        double d = std::abs(p - omega);
        if (d > 1e-12) r = std::min(r, 0.5 * d);
    }
    Complex coarse = circle_moment(f, omega, r, 0, 256);
    Complex fine = circle_moment(f, omega, r, 0, 512);
    double typical = 0.0;
    for (int j = 0; j < 16; ++j) typical += std::abs(f(omega + std::polar(r, kTwoPi * j / 16.0))) / 16.0;
    if (!std::isfinite(std::abs(fine)) || std::abs(fine - coarse) > tol * std::max(std::abs(fine), 1e-6 * r * typical)) {
        throw Error(ErrorCode::ContourContaminated, "trapezoidal residue did not stabilise under node doubling");
    }
    return fine;
}

Pole residues_closed_form(const zeta::ClosedFormZeta& zeta, Complex omega) {
    constexpr double match = 1e-9;
    Complex exact = omega;
    bool found = false;
    int max_order = 0;
    Complex residue = 0.0;
    double magnitude = 0.0;

    for (const auto& term : zeta.lattice_terms) {
        int order = 0;
        int root_hit = -1;
        for (std::size_t i = 0; i < term.denominator_roots.size(); ++i) {
            if (std::abs(omega - term.denominator_roots[i]) < match) {
                ++order;
                root_hit = static_cast<int>(i);
                exact = term.denominator_roots[i];
            }
        }
        bool lattice_hit = false;
        if (term.lattice) {
            const double p = term.lattice->period();
            Complex w(term.lattice->real_part(), std::round(omega.imag() / p) * p);
            if (std::abs(omega - w) < match) {
                lattice_hit = true;
                ++order;
                exact = w;
            }
        }
        if (order == 0) continue;
        found = true;
        max_order = std::max(max_order, order);
        if (order > 1) continue;
        Complex num = term.amplitude * std::exp(-exact * std::log(term.base_scale));
        Complex den = 1.0;
        for (std::size_t i = 0; i < term.denominator_roots.size(); ++i) {
            if (static_cast<int>(i) != root_hit) den *= exact - term.denominator_roots[i];
        }
        if (lattice_hit) {
            // d/ds (m^s - r) = ln(m) m^s = ln(m) r at a lattice point.
            den *= std::log(term.lattice->m) * term.lattice->r;
        } else if (term.lattice) {
            den *= std::exp(exact * std::log(term.lattice->m)) - term.lattice->r;
        }
        Complex c = num / den;
        residue += c;
        magnitude += std::abs(c);
    }
    for (const auto& e : zeta.elementary_terms) {
        if (std::abs(omega - e.pole_location) >= match) continue;
        found = true;
        exact = e.pole_location;
        max_order = std::max(max_order, 1);
        Complex c = e.coefficient * std::pow(zeta.delta, e.pole_location - e.delta_power_shift);
        residue += c;
        magnitude += std::abs(c);
    }
    if (!found) throw Error(ErrorCode::NotAPole, "point is not a candidate pole of the closed form");

    Pole pole{exact, 1, residue, {}};
    if (max_order > 1) {
        // Coincident factors: read the principal part off contour moments.
        const auto f = [&zeta](Complex s) { return zeta::evaluate_unchecked(zeta, s); };
        auto others = zeta::candidate_poles(zeta, std::abs(exact.imag()) + 50.0);
        double r = 0.1;
        for (Complex p : others) {
            double d = std::abs(p - exact);
            if (d > 1e-9) r = std::min(r, 0.5 * d);
        }
        std::vector<Complex> coeffs;
        double scale = 0.0;
        for (int k = 1; k <= max_order; ++k) {
            coeffs.push_back(circle_moment(f, exact, r, k - 1, 1024));
            scale = std::max(scale, std::abs(coeffs.back()) / std::pow(r, k - 1));
        }
        int order = max_order;
        while (order > 1 && std::abs(coeffs[order - 1]) / std::pow(r, order - 1) <= 1e-10 * scale) --order;
        pole.order = order;
        pole.residue = coeffs[0];
        pole.principal_part.assign(coeffs.begin() + 1, coeffs.begin() + order);
        magnitude = scale;
        if (order == 1 && std::abs(pole.residue) <= 1e-10 * scale) {
            throw Error(ErrorCode::NotAPole, "singularity is removable");
        }
        return pole;
    }
    if (std::abs(residue) <= 1e-12 * magnitude) throw Error(ErrorCode::NotAPole, "singularity is removable");
    return pole;
}

std::vector<Pole> closed_form_poles(const zeta::ClosedFormZeta& zeta, const Window& window) {
    std::vector<Pole> out;
    for (Complex w : zeta::candidate_poles(zeta, window.imag_half_height)) {
        if (!window.contains(w)) continue;
        try {
            out.push_back(residues_closed_form(zeta, w));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAPole) throw;
        }
    }
    std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) { return by_re_im(a.location, b.location); });
    return out;
}

namespace {

struct ContourSums {
    Complex log_derivative;  // integral of f'/f
    Complex value;           // integral of f
    Complex moment;          // integral of s f'/f
    Complex value_moment;    // integral of s f
    double abs_value = 0.0;  // integral of |f| |ds|
};

ContourSums& operator+=(ContourSums& a, const ContourSums& b) {
    a.log_derivative += b.log_derivative;
    a.value += b.value;
    a.moment += b.moment;
    a.value_moment += b.value_moment;
    a.abs_value += b.abs_value;
    return a;
}

class ArgumentPrinciple {
public:
    ArgumentPrinciple(const Meromorphic& f, double tol, double initial_size)
        : f_(f), tol_(tol), attempt_size_(initial_size / 16.0), min_size_(std::max(1e-9, 1e-7 * initial_size)) {}

    std::vector<Pole> run(const Rect& rect) {
        auto sums = cell_sums(rect);
        if (!sums) throw Error(ErrorCode::BoundaryPole, "a pole or zero lies on (or within tolerance of) the rectangle boundary");
        std::vector<Pole> poles;
        if (!process(rect, *sums, poles)) {
            throw Error(ErrorCode::NonIsolable, "could not place subdivision lines away from singularities");
        }
        std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) { return by_re_im(a.location, b.location); });
        std::vector<Pole> merged;
        for (auto& p : poles) {
            if (!merged.empty() && std::abs(merged.back().location - p.location) < std::max(tol_, 1e-7)) continue;
            merged.push_back(std::move(p));
        }
        return merged;
    }

private:
    const Meromorphic& f_;
    double tol_;
    double attempt_size_;
    double min_size_;

    std::optional<ContourSums> segment(Complex a, Complex b) const {
        ContourSums total{};
        if (!adapt(a, b, 0, total)) return std::nullopt;
        return total;
    }

    bool gk(Complex a, Complex b, ContourSums& k_out, ContourSums& g_out) const {
        const auto& rule = quadrature::gauss_kronrod_15();
        Complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
        k_out = {};
        g_out = {};
        for (std::size_t i = 0; i < quadrature::KronrodPair::size; ++i) {
            Complex s = mid + half * rule.nodes[i];
            Complex v = f_.value(s);
            Complex d = f_.derivative_at(s);
            if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d))) {
                // Removable points of a closed form evaluate as 0/0; step off them.
                s += 1e-9 * (1.0 + std::abs(s)) * Complex(0.6, 0.8);
                v = f_.value(s);
                d = f_.derivative_at(s);
            }
            if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d)) || std::abs(v) == 0.0) return false;
            Complex ld = d / v;
            const ContourSums c{ld * half, v * half, s * ld * half, s * v * half, std::abs(v) * std::abs(half)};
            const ContourSums kw{c.log_derivative * rule.kronrod[i], c.value * rule.kronrod[i], c.moment * rule.kronrod[i],
                                 c.value_moment * rule.kronrod[i], c.abs_value * rule.kronrod[i]};
            const ContourSums gw{c.log_derivative * rule.gauss[i], c.value * rule.gauss[i], c.moment * rule.gauss[i],
                                 c.value_moment * rule.gauss[i], c.abs_value * rule.gauss[i]};
            k_out += kw;
            g_out += gw;
        }
        return true;
    }

    bool adapt(Complex a, Complex b, int depth, ContourSums& total) const {
        ContourSums k, g;
        if (!gk(a, b, k, g)) return false;
        const double len = std::abs(b - a);
        // Node positions carry absolute rounding of order eps |s|, which on
        // short chords far from the origin sets a floor on attainable accuracy.
        const double floor = 128.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(a)) / len;
        bool log_ok = std::abs(k.log_derivative - g.log_derivative) <=
                      1e-10 + std::max(1e-9, floor) * std::abs(k.log_derivative);
        bool val_ok = std::abs(k.value - g.value) <= std::max(1e-11, floor) * k.abs_value + 1e-300;
        if ((log_ok && val_ok) || len < 1e-13) {
            if (!(log_ok && val_ok) && depth > 0) return false;
            total += k;
            return true;
        }
        if (depth >= 40) return false;
        Complex m = 0.5 * (a + b);
        return adapt(a, m, depth + 1, total) && adapt(m, b, depth + 1, total);
    }

    std::optional<ContourSums> cell_sums(const Rect& r) const {
        const Complex c[4] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max}, {r.re_min, r.im_max}};
        ContourSums total{};
        for (int e = 0; e < 4; ++e) {
            auto s = segment(c[e], c[(e + 1) % 4]);
            if (!s) return std::nullopt;
            total += *s;
        }
        Complex w = total.log_derivative / kTwoPiI;
        if (std::abs(w.real() - std::round(w.real())) > 0.05 || std::abs(w.imag()) > 0.05) return std::nullopt;
        return total;
    }

    static double size_of(const Rect& r) { return std::max(r.re_max - r.re_min, r.im_max - r.im_min); }

    // Winding number of f on a small circle, counted with the same quadrature.
    std::optional<int> circle_winding(Complex w, double radius) const {
        constexpr int pieces = 16;
        ContourSums total{};
        for (int j = 0; j < pieces; ++j) {
            // Polygonal approximation keeps the winding exact as long as f has no
            // singularity between the chord and the arc.
            Complex a = w + std::polar(radius, kTwoPi * j / pieces);
            Complex b = w + std::polar(radius, kTwoPi * (j + 1) / pieces);
            auto s = segment(a, b);
            if (!s) return std::nullopt;
            total += *s;
        }
        Complex n = total.log_derivative / kTwoPiI;
        if (std::abs(n.real() - std::round(n.real())) > 0.05) return std::nullopt;
        return static_cast<int>(std::lround(n.real()));
    }

    // A pole masked by a nearby zero leaves the winding number at zero, so the
    // residue moments of f are tried first and the moment of s f'/f second.
    std::optional<Pole> isolate(const Rect& r, const ContourSums& sums, int winding) const {
        std::vector<Complex> starts;
        const Complex m0 = sums.value / kTwoPiI;
        if (winding < 0) starts.push_back(-(sums.moment / kTwoPiI) / static_cast<double>(-winding));
        if (std::abs(m0) > 0.0) starts.push_back((sums.value_moment / kTwoPiI) / m0);
        for (Complex start : starts) {
            if (!std::isfinite(std::abs(start))) continue;
            if (auto pole = refine(r, sums, start, std::max(1, -winding))) return pole;
        }
        return std::nullopt;
    }

    std::optional<Pole> refine(const Rect& r, const ContourSums& sums, Complex s, int multiplicity) const {
        // Newton on 1/f; a step is kept only if it shrinks |1/f|.
        for (int iter = 0; iter < 80; ++iter) {
            Complex v = f_.value(s);
            Complex d = f_.derivative_at(s);
            if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d)) || std::abs(d) == 0.0) break;
            Complex step = static_cast<double>(multiplicity) * v / d;
            Complex next = s + step;
            Complex vn = f_.value(next);
            if (!std::isfinite(std::abs(vn))) {
                s = next;
                break;
            }
            if (!(std::abs(vn) > std::abs(v))) break;
            s = next;
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(s))) break;
        }
        const double margin = 1e-9 * (1.0 + size_of(r));
        if (s.real() < r.re_min - margin || s.real() > r.re_max + margin || s.imag() < r.im_min - margin ||
            s.imag() > r.im_max + margin) {
            return std::nullopt;
        }

        // Shrink the circle until the pole term dominates: two consecutive
        // radii must report the same negative winding number.
        int order = 0;
        double radius = 0.25 * size_of(r);
        std::optional<int> previous;
        const double smallest = 1e-12 * (1.0 + std::abs(s));
        for (double rho = radius; rho >= smallest; rho *= 0.125) {
            auto n = circle_winding(s, rho);
            if (n && previous && *n == *previous && *n < 0) {
                order = -*n;
                radius = rho;
                break;
            }
            previous = n;
        }
        if (order == 0) return std::nullopt;
        if (order > 3) throw Error(ErrorCode::NonIsolable, "pole of order above 3");

        // Centre of mass of the pole: the (s - w) moment of -f'/f on the circle.
        Complex shift = 0.0;
        for (std::size_t j = 0; j < 256; ++j) {
            Complex e = std::polar(radius, kTwoPi * static_cast<double>(j) / 256.0);
            Complex z = s + e;
            shift += -f_.derivative_at(z) / f_.value(z) * e * e;
        }
        shift /= 256.0 * static_cast<double>(order);
        if (std::isfinite(std::abs(shift)) && std::abs(shift) < 0.5 * radius) s += shift;

        Pole pole;
        pole.location = snap(s);
        pole.order = order;
        for (int k = 1; k <= order; ++k) {
            Complex c = circle_moment(f_.value, s, radius, k - 1, 512);
            if (k == 1) {
                pole.residue = c;
            } else {
                pole.principal_part.push_back(c);
            }
        }
        // The cell must not hide further poles whose residues would be unaccounted for.
        Complex rest = sums.value / kTwoPiI - pole.residue;
        if (std::abs(rest) > 1e-7 * (sums.abs_value / kTwoPi) + 1e-14) return std::nullopt;
        return pole;
    }

    bool process(const Rect& r, const ContourSums& sums, std::vector<Pole>& out) const {
        const double size = size_of(r);
        // Coarse cells are always refined so that cancelling residues or
        // pole-zero pairs cannot hide poles from the cell tests.
        if (size > attempt_size_) return subdivide(r, out);

        const int winding = static_cast<int>(std::lround((sums.log_derivative / kTwoPiI).real()));
        const Complex residue_sum = sums.value / kTwoPiI;
        const bool residue_signal = std::abs(residue_sum) > 1e-7 * (sums.abs_value / kTwoPi) + 1e-14;
        if (winding >= 0 && !residue_signal) return true;

        if (auto pole = isolate(r, sums, winding)) {
            out.push_back(*pole);
            return true;
        }
        if (size <= min_size_) throw Error(ErrorCode::NonIsolable, "subdivision stalled without isolating a pole");
        return subdivide(r, out);
    }

    bool subdivide(const Rect& r, std::vector<Pole>& out) const {
        static constexpr double fractions[] = {0.5371, 0.4613, 0.5849, 0.4127, 0.6233};
        const double w = r.re_max - r.re_min, h = r.im_max - r.im_min;
        const bool split_re = w >= 0.5 * h;
        const bool split_im = h >= 0.5 * w;
        for (double frac : fractions) {
            double xs = r.re_min + frac * w;
            double ys = r.im_min + (1.0 - frac) * h;
            std::vector<Rect> children;
            if (split_re && split_im) {
                children = {{r.re_min, xs, r.im_min, ys}, {xs, r.re_max, r.im_min, ys}, {r.re_min, xs, ys, r.im_max},
                            {xs, r.re_max, ys, r.im_max}};
            } else if (split_re) {
                children = {{r.re_min, xs, r.im_min, r.im_max}, {xs, r.re_max, r.im_min, r.im_max}};
            } else {
                children = {{r.re_min, r.re_max, r.im_min, ys}, {r.re_min, r.re_max, ys, r.im_max}};
            }
            std::vector<ContourSums> sums;
            bool ok = true;
            for (const auto& c : children) {
                auto s = cell_sums(c);
                if (!s) {
                    ok = false;
                    break;
                }
                sums.push_back(*s);
            }
            if (!ok) continue;
            std::vector<Pole> found;
            for (std::size_t i = 0; i < children.size() && ok; ++i) ok = process(children[i], sums[i], found);
            if (!ok) continue;
            out.insert(out.end(), found.begin(), found.end());
            return true;
        }
        return false;
    }
};

}  // namespace

std::vector<Pole> find_poles_argument_principle(const Meromorphic& f, const Rect& rect, double tol) {
    if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min)) {
        throw Error(ErrorCode::InvalidArgument, "rectangle must have positive width and height");
    }
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    ArgumentPrinciple ap(f, tol, std::max(rect.re_max - rect.re_min, rect.im_max - rect.im_min));
    return ap.run(rect);
}

std::vector<Pole> find_poles_argument_principle(const zeta::ClosedFormZeta& zeta, const Rect& rect, double tol) {
    return find_poles_argument_principle(as_meromorphic(zeta), rect, tol);
}

LanguidityEstimate languidity_probe(const std::function<Complex(Complex)>& f, double screen_abscissa,
                                    std::span<const double> heights, std::span<const Complex> known_poles) {
    if (heights.size() < 8) throw Error(ErrorCode::InsufficientSamples, "languidity probe needs at least 8 heights");
    for (std::size_t i = 0; i < heights.size(); ++i) {
        if (!(heights[i] > 0.0) || (i > 0 && !(heights[i] > heights[i - 1]))) {
            throw Error(ErrorCode::InvalidArgument, "heights must be positive and increasing");
        }
    }
    if (heights.back() < 100.0 * heights.front()) throw Error(ErrorCode::InsufficientSamples, "heights must span two decades");

    LanguidityEstimate est;
    std::vector<double> xs, ys;
    for (double t : heights) {
        bool skip = false;
        for (int sign : {1, -1}) {
            Complex s(screen_abscissa, sign * t);
            for (Complex p : known_poles) {
                if (std::abs(s - p) < 1e-3) throw Error(ErrorCode::PoleOnLine, "sample point within 1e-3 of a pole");
                if (std::abs(p.real() - screen_abscissa) < 1.0 && std::abs(p.imag() - s.imag()) < 1.0) skip = true;
            }
        }
        if (skip) continue;
        double mag = std::max(std::abs(f(Complex(screen_abscissa, t))), std::abs(f(Complex(screen_abscissa, -t))));
        if (!(mag > 0.0) || !std::isfinite(mag)) continue;
        xs.push_back(std::log(t));
        ys.push_back(std::log(mag));
        est.sample_heights.push_back(t);
    }
    if (xs.size() < 8) {
        throw Error(ErrorCode::InsufficientSamples, "too few usable heights after skipping pole ordinates");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    est.kappa = sxy / sxx;
    est.constant = std::exp(my - est.kappa * mx);
    return est;
}

}  // namespace fractal::cdim
