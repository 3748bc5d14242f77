#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fractal/cdim.hpp"
#include "fractal/error.hpp"
#include "fractal/fzeta.hpp"
#include "fractal/io.hpp"
#include "fractal/tubeformula.hpp"

namespace fractal::cli {

namespace {

using geometry::CompactSetDescriptor;
using io::format_double;
using io::json;
using Complex = std::complex<double>;

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

struct Run {
    io::ExperimentConfig config;
    CompactSetDescriptor set;
    zeta::CatalogInfo info;
    double delta = 1.0;
};

// Errors that stem from the request rather than from the numerics.
bool is_usage_error(ErrorCode c) {
    switch (c) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidDescriptor:
        case ErrorCode::InvalidArgument:
        case ErrorCode::NoClosedForm:
        case ErrorCode::DeltaTooSmall:
        case ErrorCode::OutOfValidityRange:
            return true;
        default:
            return false;
    }
}

Run prepare(const Common& opts, bool needs_closed_form) {
    Run r{io::load_config(opts.config_path), CompactSetDescriptor::gasket(), {}, 1.0};
    if (opts.seed) r.config.seed = *opts.seed;
    if (opts.out_dir) r.config.out_dir = *opts.out_dir;
    const auto base = std::filesystem::path(opts.config_path).parent_path().string();
    r.set = io::resolve_set(r.config, base.empty() ? "." : base);
    if (needs_closed_form) {
        r.info = zeta::catalog_info(r.set);
        r.delta = r.config.delta.value_or(r.info.default_delta);
    } else {
        r.delta = r.config.delta.value_or(1.0);
    }
    return r;
}

std::string output_path(const io::ExperimentConfig& c, const std::string& suffix) {
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / (c.stem + suffix)).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write '" + path + "'");
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fixed(double x, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string complex_text(Complex z) {
    return fixed(z.real(), 10) + (z.imag() < 0 ? " - " : " + ") + fixed(std::abs(z.imag()), 10) + "i";
}

std::vector<CompactSetDescriptor> catalog_sets() {
    return {CompactSetDescriptor::point({0.0}), CompactSetDescriptor::middle_third_cantor(),
            CompactSetDescriptor::cantor_string_boundary(), CompactSetDescriptor::gasket(),
            CompactSetDescriptor::carpet()};
}

int cmd_catalog(bool as_json, std::ostream& out) {
    json list = json::array();
    char line[160];
    if (!as_json) {
        std::snprintf(line, sizeof line, "%-22s %3s %-12s %-12s %-14s %-12s\n", "set", "N", "D", "period",
                      "delta_bound", "t_limit");
        out << line;
    }
    for (const auto& set : catalog_sets()) {
        auto info = zeta::catalog_info(set);
        json e{{"set", info.name},
               {"descriptor", io::set_to_json(set)},
               {"ambient_dim", set.ambient_dim()},
               {"dimension", info.dimension ? json(*info.dimension) : json(nullptr)},
               {"oscillation_period", info.oscillation_period ? json(*info.oscillation_period) : json(nullptr)},
               {"delta_lower_bound", info.delta_lower_bound},
               {"default_delta", info.default_delta},
               {"tube_formula_limit", std::isfinite(info.tube_formula_limit) ? json(info.tube_formula_limit) : json(nullptr)}};
        list.push_back(e);
        if (!as_json) {
            std::snprintf(line, sizeof line, "%-22s %3zu %-12s %-12s %-14s %-12s\n", info.name.c_str(),
                          set.ambient_dim(), info.dimension ? fixed(*info.dimension).c_str() : "-",
                          info.oscillation_period ? fixed(*info.oscillation_period).c_str() : "-",
                          ("> " + fixed(info.delta_lower_bound)).c_str(),
                          std::isfinite(info.tube_formula_limit) ? ("< " + fixed(info.tube_formula_limit)).c_str() : "-");
            out << line;
        }
    }
    if (as_json) out << dump(list);
    return 0;
}

int cmd_zeta_eval(const Common& opts, std::ostream& out) {
    auto run = prepare(opts, false);
    std::optional<zeta::ClosedFormZeta> closed;
    try {
        run.info = zeta::catalog_info(run.set);
        run.delta = run.config.delta.value_or(run.info.default_delta);
        closed = zeta::catalog_zeta(run.set, run.delta);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoClosedForm) throw;
    }
    auto points = run.config.s_values;
    if (points.empty()) {
        const double sigma = static_cast<double>(run.set.ambient_dim()) + 0.5;
        for (int k = 0; k < 5; ++k) points.emplace_back(sigma, static_cast<double>(k));
    }
    zeta::NumericZetaConfig numeric{run.delta, run.config.mc_samples, run.config.quadrature_points, run.config.seed};

    std::string csv = "re_s,im_s,re_zeta,im_zeta,half_width\n";
    for (Complex s : points) {
        zeta::ZetaEstimate est = closed ? zeta::ZetaEstimate{zeta::closed_form_eval(*closed, s), 0.0}
                                        : zeta::distance_zeta_numeric(run.set, s, numeric);
        csv += format_double(s.real()) + ',' + format_double(s.imag()) + ',' + format_double(est.value.real()) + ',' +
               format_double(est.value.imag()) + ',' + format_double(est.half_width) + '\n';
    }
    write_file(output_path(run.config, "_zeta.csv"), csv);
    out << csv;
    return 0;
}

int cmd_poles(const Common& opts, std::ostream& out) {
    auto run = prepare(opts, true);
    auto z = zeta::catalog_zeta(run.set, run.delta);
    auto poles = cdim::closed_form_poles(z, cdim::Window::band(run.config.band));

    char line[200];
    std::snprintf(line, sizeof line, "%-22s %-22s %5s %-22s %-22s\n", "re", "im", "order", "residue_re", "residue_im");
    out << line;
    for (const auto& p : poles) {
        std::snprintf(line, sizeof line, "%-22s %-22s %5d %-22s %-22s\n", format_double(p.location.real()).c_str(),
                      format_double(p.location.imag()).c_str(), p.order, format_double(p.residue.real()).c_str(),
                      format_double(p.residue.imag()).c_str());
        out << line;
    }
    json doc{{"set", run.info.name},
             {"delta", run.delta},
             {"band", run.config.band},
             {"zeta", io::zeta_to_json(z)},
             {"poles", io::poles_to_json(poles)}};
    write_file(output_path(run.config, "_poles.json"), dump(doc));
    return 0;
}

int cmd_tube_compare(const Common& opts, std::ostream& out) {
    auto run = prepare(opts, true);
    auto z = zeta::catalog_zeta(run.set, run.delta);
    auto series = tube::build_series(z, run.config.truncation, run.info.tube_formula_limit);

    geometry::TubeOptions oracle;
    if (run.config.oracle_method) oracle.method = geometry::tube_method_from_string(*run.config.oracle_method);
    oracle.cell_size = run.config.cell_size;
    oracle.mc_samples = run.config.mc_samples;
    oracle.seed = run.config.seed;

    const auto ts = run.config.t_grid.values();
    auto cmp = tube::compare_tube_formula(run.set, series, ts, oracle);
    auto summary = io::comparison_summary(cmp, run.config.threshold);
    write_file(output_path(run.config, "_tube.csv"), io::comparison_csv(cmp));
    write_file(output_path(run.config, "_tube.json"), dump(summary));

    const bool passed = summary["passed"].get<bool>();
    out << run.info.name << " K=" << cmp.truncation << " oracle=" << geometry::to_string(cmp.oracle_method)
        << " points=" << cmp.rows.size() << " max_rel_error=" << format_double(cmp.max_rel_error())
        << " threshold=" << format_double(run.config.threshold) << (passed ? " PASS" : " FAIL") << "\n";
    return passed ? 0 : 1;
}

int cmd_measurability(const Common& opts, std::ostream& out) {
    auto run = prepare(opts, true);
    if (!run.info.dimension) throw Error(ErrorCode::NoClosedForm, "no known dimension for this set");
    auto z = zeta::catalog_zeta(run.set, run.delta);
    auto v = tube::measurability_from_closed_form(z, *run.info.dimension, run.config.band);

    out << run.info.name << ": " << tube::to_string(v.verdict) << "\n";
    out << "  D = " << format_double(v.dimension) << "\n";
    out << "  " << v.reason << "\n";
    out << "  poles on Re s = D within |Im s| <= " << format_double(run.config.band) << ":\n";
    for (const auto& p : v.critical_line_poles) {
        out << "    " << complex_text(p.location) << "  order " << p.order << "  residue " << complex_text(p.residue)
            << "\n";
    }
    if (v.content) out << "  Minkowski content = " << format_double(*v.content) << "\n";
    if (v.evidence.languidity) out << "  growth exponent kappa = " << fixed(v.evidence.languidity->kappa) << "\n";
    out << "  screen hypothesis assumed, not verified\n";

    auto doc = io::verdict_to_json(v);
    doc["set"] = run.info.name;
    write_file(output_path(run.config, "_verdict.json"), dump(doc));
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractal zeta functions, complex dimensions and tube formulas"};
    app.require_subcommand(1);

    bool catalog_json = false;
    auto* catalog = app.add_subcommand("catalog", "List the built-in sets");
    catalog->add_flag("--json", catalog_json, "Machine-readable listing");

    Common opts;
    auto with_config = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", opts.seed, "Override the config seed");
        sub->add_option("--out-dir", opts.out_dir, "Override the output directory");
        return sub;
    };
    auto* zeta_eval = with_config("zeta-eval", "Evaluate the distance zeta function, CSV");
    auto* poles = with_config("poles", "Complex dimensions and residues in a band");
    auto* tube_compare = with_config("tube-compare", "Truncated tube formula against a volume oracle");
    auto* measurability = with_config("measurability", "Minkowski measurability verdict");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (catalog->parsed()) return cmd_catalog(catalog_json, out);
        if (zeta_eval->parsed()) return cmd_zeta_eval(opts, out);
        if (poles->parsed()) return cmd_poles(opts, out);
        if (tube_compare->parsed()) return cmd_tube_compare(opts, out);
        if (measurability->parsed()) return cmd_measurability(opts, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_usage_error(e.code()) ? 2 : 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace fractal::cli
