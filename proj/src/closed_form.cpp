#include "fractal/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fractal/error.hpp"

namespace fractal::zeta {

double Lattice::real_part() const { return std::log(r) / std::log(m); }
double Lattice::period() const { return 2.0 * std::numbers::pi / std::log(m); }

namespace {

Complex lattice_term_value(const LatticeTerm& term, Complex s) {
    Complex denom = 1.0;
    for (double root : term.denominator_roots) denom *= (s - root);
    if (term.lattice) denom *= std::exp(s * std::log(term.lattice->m)) - term.lattice->r;
    return term.amplitude * std::exp(-s * std::log(term.base_scale)) / denom;
}

Complex lattice_term_log_derivative(const LatticeTerm& term, Complex s) {
    Complex d = -std::log(term.base_scale);
    for (double root : term.denominator_roots) d -= 1.0 / (s - root);
    if (term.lattice) {
        const double lm = std::log(term.lattice->m);
        Complex ms = std::exp(s * lm);
        d -= lm * ms / (ms - term.lattice->r);
    }
    return d;
}

Complex elementary_value(const ElementaryTerm& term, double delta, Complex s) {
    return term.coefficient * std::exp((s - static_cast<double>(term.delta_power_shift)) * std::log(delta)) /
           (s - term.pole_location);
}

}  // namespace

Complex evaluate_unchecked(const ClosedFormZeta& zeta, Complex s) {
    Complex total = 0.0;
    for (const auto& t : zeta.lattice_terms) total += lattice_term_value(t, s);
    for (const auto& e : zeta.elementary_terms) total += elementary_value(e, zeta.delta, s);
    return total;
}

Complex derivative_unchecked(const ClosedFormZeta& zeta, Complex s) {
    Complex total = 0.0;
    for (const auto& t : zeta.lattice_terms) total += lattice_term_value(t, s) * lattice_term_log_derivative(t, s);
    for (const auto& e : zeta.elementary_terms) {
        total += elementary_value(e, zeta.delta, s) * (std::log(zeta.delta) - 1.0 / (s - e.pole_location));
    }
    return total;
}

double distance_to_candidates(const ClosedFormZeta& zeta, Complex s) {
    double best = INFINITY;
    for (const auto& t : zeta.lattice_terms) {
        for (double root : t.denominator_roots) best = std::min(best, std::abs(s - root));
        if (t.lattice) {
            const double p = t.lattice->period();
            const double k = std::round(s.imag() / p);
            best = std::min(best, std::abs(s - Complex(t.lattice->real_part(), k * p)));
        }
    }
    for (const auto& e : zeta.elementary_terms) best = std::min(best, std::abs(s - e.pole_location));
    return best;
}

Complex closed_form_eval(const ClosedFormZeta& zeta, Complex s) {
    if (distance_to_candidates(zeta, s) < 1e-12) {
        throw Error(ErrorCode::NearPole, "evaluation point lies within 1e-12 of a pole");
    }
    return evaluate_unchecked(zeta, s);
}

ClosedFormZeta scale_zeta(const ClosedFormZeta& zeta, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    ClosedFormZeta out = zeta;
    if (lambda == 1.0) return out;
    out.delta = zeta.delta * lambda;
    for (auto& t : out.lattice_terms) t.base_scale /= lambda;
    for (auto& e : out.elementary_terms) e.coefficient *= std::pow(lambda, e.delta_power_shift);
    return out;
}

std::vector<Complex> candidate_poles(const ClosedFormZeta& zeta, double imag_half_height) {
    std::vector<Complex> out;
    auto add = [&](Complex w) {
        for (const auto& existing : out) {
            if (std::abs(existing - w) < 1e-9) return;
        }
        out.push_back(w);
    };
    for (const auto& t : zeta.lattice_terms) {
        for (double root : t.denominator_roots) add(root);
        if (t.lattice) {
            const double p = t.lattice->period();
            const auto kmax = static_cast<long>(std::floor(imag_half_height / p));
            for (long k = -kmax; k <= kmax; ++k) add(Complex(t.lattice->real_part(), static_cast<double>(k) * p));
        }
    }
    for (const auto& e : zeta.elementary_terms) add(e.pole_location);
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return out;
}

std::vector<Lattice> lattices(const ClosedFormZeta& zeta) {
    std::vector<Lattice> out;
    for (const auto& t : zeta.lattice_terms) {
        if (!t.lattice) continue;
        bool seen = std::any_of(out.begin(), out.end(), [&](const Lattice& l) {
            return std::abs(l.real_part() - t.lattice->real_part()) < 1e-12 && std::abs(l.period() - t.lattice->period()) < 1e-12;
        });
        if (!seen) out.push_back(*t.lattice);
    }
    return out;
}

}  // namespace fractal::zeta
