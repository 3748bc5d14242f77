#include "fractal/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fractal/error.hpp"

namespace fractal::io {

namespace {

using geometry::CompactSetDescriptor;

[[noreturn]] void bad_set(const std::string& what) { throw Error(ErrorCode::InvalidDescriptor, what); }
[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

// Reads a field with nlohmann's conversion, reporting failures as `code`.
template <typename T>
T field(const json& j, const char* key, ErrorCode code) {
    if (!j.is_object() || !j.contains(key)) throw Error(code, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(code, std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, ErrorCode code) {
    return j.contains(key) ? field<T>(j, key, code) : fallback;
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, ErrorCode code) {
    if (!j.is_object()) throw Error(code, "expected a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, _] : j.items()) {
        if (!ok.count(k)) throw Error(code, "unknown field '" + k + "'");
    }
}

json points_json(const std::vector<geometry::Point>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(p);
    return a;
}

json lengths_json(const geometry::GeometricLengths& g) {
    return {{"first", g.first}, {"ratio", g.ratio}, {"multiplicity", g.multiplicity}};
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json set_to_json(const CompactSetDescriptor& set) {
    json j;
    j["type"] = set.kind();
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, geometry::PointSet> || std::is_same_v<T, geometry::PointCloud>) {
                j["dim"] = v.dim;
                j["points"] = points_json(v.points);
            } else if constexpr (std::is_same_v<T, geometry::CantorLike>) {
                j["ratio"] = v.ratio;
                j["scale"] = v.scale;
            } else if constexpr (std::is_same_v<T, geometry::FractalStringBoundary>) {
                if (v.generator) {
                    j["generator"] = lengths_json(*v.generator);
                } else {
                    j["lengths"] = v.lengths;
                }
            }
        },
        set.variant());
    return j;
}

CompactSetDescriptor set_from_json(const json& j) {
    const auto code = ErrorCode::InvalidDescriptor;
    const auto type = field<std::string>(j, "type", code);
    if (type == "point_set" || type == "point_cloud") {
        only_keys(j, {"type", "dim", "points"}, code);
        const auto dim = field<std::size_t>(j, "dim", code);
        const auto pts = field<std::vector<geometry::Point>>(j, "points", code);
        if (type == "point_set") return CompactSetDescriptor(geometry::PointSet{dim, pts});
        return CompactSetDescriptor(geometry::PointCloud{dim, pts});
    }
    if (type == "cantor") {
        only_keys(j, {"type", "ratio", "scale"}, code);
        return CompactSetDescriptor(
            geometry::CantorLike{field_or(j, "ratio", 1.0 / 3.0, code), field_or(j, "scale", 1.0, code)});
    }
    if (type == "string_boundary") {
        only_keys(j, {"type", "lengths", "generator"}, code);
        if (j.contains("lengths") == j.contains("generator")) bad_set("string_boundary needs exactly one of lengths, generator");
        geometry::FractalStringBoundary s;
        if (j.contains("lengths")) {
            s.lengths = field<std::vector<double>>(j, "lengths", code);
        } else {
            const auto& g = j.at("generator");
            only_keys(g, {"first", "ratio", "multiplicity"}, code);
            s.generator = geometry::GeometricLengths{field<double>(g, "first", code), field<double>(g, "ratio", code),
                                                     field<unsigned>(g, "multiplicity", code)};
        }
        return CompactSetDescriptor(s);
    }
    if (type == "sierpinski_gasket") {
        only_keys(j, {"type"}, code);
        return CompactSetDescriptor::gasket();
    }
    if (type == "sierpinski_carpet_3d") {
        only_keys(j, {"type"}, code);
        return CompactSetDescriptor::carpet();
    }
    bad_set("unknown set type '" + type + "'");
}

json zeta_to_json(const zeta::ClosedFormZeta& z) {
    json lattice = json::array();
    for (const auto& t : z.lattice_terms) {
        json e{{"amplitude", t.amplitude}, {"base_scale", t.base_scale}, {"denominator_roots", t.denominator_roots}};
        if (t.lattice) e["lattice"] = {{"m", t.lattice->m}, {"r", t.lattice->r}};
        lattice.push_back(e);
    }
    json elementary = json::array();
    for (const auto& t : z.elementary_terms) {
        elementary.push_back(
            {{"coefficient", t.coefficient}, {"delta_power_shift", t.delta_power_shift}, {"pole_location", t.pole_location}});
    }
    return {{"ambient_dim", z.ambient_dim},
            {"delta", z.delta},
            {"lattice_terms", lattice},
            {"elementary_terms", elementary}};
}

zeta::ClosedFormZeta zeta_from_json(const json& j) {
    const auto code = ErrorCode::ConfigError;
    only_keys(j, {"ambient_dim", "delta", "lattice_terms", "elementary_terms"}, code);
    zeta::ClosedFormZeta z;
    z.ambient_dim = field<std::size_t>(j, "ambient_dim", code);
    z.delta = field<double>(j, "delta", code);
    for (const auto& e : field_or(j, "lattice_terms", json::array(), code)) {
        only_keys(e, {"amplitude", "base_scale", "denominator_roots", "lattice"}, code);
        zeta::LatticeTerm t;
        t.amplitude = field<double>(e, "amplitude", code);
        t.base_scale = field<double>(e, "base_scale", code);
        t.denominator_roots = field_or(e, "denominator_roots", std::vector<double>{}, code);
        if (e.contains("lattice")) {
            const auto& l = e.at("lattice");
            only_keys(l, {"m", "r"}, code);
            t.lattice = zeta::Lattice{field<double>(l, "m", code), field<double>(l, "r", code)};
        }
        z.lattice_terms.push_back(t);
    }
    for (const auto& e : field_or(j, "elementary_terms", json::array(), code)) {
        only_keys(e, {"coefficient", "delta_power_shift", "pole_location"}, code);
        z.elementary_terms.push_back({field<double>(e, "coefficient", code), field<int>(e, "delta_power_shift", code),
                                      field<double>(e, "pole_location", code)});
    }
    return z;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        bad_config("complex numbers are written as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json poles_to_json(std::span<const cdim::Pole> poles) {
    json a = json::array();
    for (const auto& p : poles) {
        json principal = json::array();
        for (Complex c : p.principal_part) principal.push_back(complex_to_json(c));
        a.push_back({{"location", complex_to_json(p.location)},
                     {"order", p.order},
                     {"residue", complex_to_json(p.residue)},
                     {"principal_part", principal}});
    }
    return a;
}

std::vector<cdim::Pole> poles_from_json(const json& j) {
    const auto code = ErrorCode::ConfigError;
    if (!j.is_array()) bad_config("pole list must be an array");
    std::vector<cdim::Pole> out;
    for (const auto& e : j) {
        only_keys(e, {"location", "order", "residue", "principal_part"}, code);
        cdim::Pole p;
        p.location = complex_from_json(field<json>(e, "location", code));
        p.order = field<int>(e, "order", code);
        p.residue = complex_from_json(field<json>(e, "residue", code));
        for (const auto& c : field_or(e, "principal_part", json::array(), code)) p.principal_part.push_back(complex_from_json(c));
        out.push_back(std::move(p));
    }
    return out;
}

json verdict_to_json(const tube::MeasurabilityVerdict& v) {
    json j{{"verdict", tube::to_string(v.verdict)},
           {"dimension", v.dimension},
           {"critical_line_poles", poles_to_json(v.critical_line_poles)},
           {"content", v.content ? json(*v.content) : json(nullptr)},
           {"hypotheses_assumed", v.hypotheses_assumed},
           {"reason", v.reason}};
    json ev = json::object();
    if (v.evidence.searched_half_height) ev["searched_half_height"] = *v.evidence.searched_half_height;
    if (v.evidence.oscillation_period) ev["oscillation_period"] = *v.evidence.oscillation_period;
    if (v.evidence.languidity) {
        const auto& l = *v.evidence.languidity;
        ev["languidity"] = {{"kappa", l.kappa}, {"constant", l.constant}, {"heights_used", l.sample_heights.size()}};
    }
    j["evidence"] = ev;
    return j;
}

std::string tube_samples_csv(std::span<const geometry::TubeSample> samples) {
    std::ostringstream out;
    out << "t,volume,method,error_bound\n";
    for (const auto& s : samples) {
        out << format_double(s.t) << ',' << format_double(s.volume) << ',' << geometry::to_string(s.method) << ','
            << (s.error_bound ? format_double(*s.error_bound) : std::string()) << '\n';
    }
    return out.str();
}

std::string comparison_csv(const tube::TubeComparison& cmp) {
    std::ostringstream out;
    out << "t,direct,formula,abs_err,rel_err\n";
    for (const auto& r : cmp.rows) {
        out << format_double(r.t) << ',' << format_double(r.direct) << ',' << format_double(r.formula) << ','
            << format_double(r.abs_error) << ',' << format_double(r.rel_error) << '\n';
    }
    return out.str();
}

json comparison_summary(const tube::TubeComparison& cmp, double threshold) {
    const double worst = cmp.max_rel_error();
    return {{"set", cmp.set_id},
            {"K", cmp.truncation},
            {"oracle_method", geometry::to_string(cmp.oracle_method)},
            {"points", cmp.rows.size()},
            {"max_rel_error", worst},
            {"threshold", threshold},
            {"passed", worst <= threshold},
            {"within_error_budget", cmp.within_error_budget()}};
}

std::vector<double> TGrid::values() const {
    if (log) return geometry::log_spaced(min, max, count);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = count == 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

ExperimentConfig config_from_json(const json& j) {
    const auto code = ErrorCode::ConfigError;
    only_keys(j,
              {"set", "delta", "seed", "mc_samples", "quadrature_points", "t_grid", "truncation", "band", "threshold",
               "oracle_method", "cell_size", "s_values", "outputs"},
              code);
    ExperimentConfig c;
    if (!j.contains("set") || !(j["set"].is_object() || j["set"].is_string())) {
        bad_config("'set' must be a descriptor object or a file path");
    }
    c.set = j["set"];
    if (!j.contains("seed")) bad_config("'seed' is mandatory");
    c.seed = field<std::uint64_t>(j, "seed", code);
    if (j.contains("delta")) c.delta = field<double>(j, "delta", code);
    c.mc_samples = field_or(j, "mc_samples", c.mc_samples, code);
    c.quadrature_points = field_or(j, "quadrature_points", c.quadrature_points, code);
    if (j.contains("t_grid")) {
        const auto& g = j["t_grid"];
        only_keys(g, {"min", "max", "count", "log"}, code);
        c.t_grid.min = field_or(g, "min", c.t_grid.min, code);
        c.t_grid.max = field_or(g, "max", c.t_grid.max, code);
        c.t_grid.count = field_or(g, "count", c.t_grid.count, code);
        c.t_grid.log = field_or(g, "log", c.t_grid.log, code);
    }
    c.truncation = field_or(j, "truncation", c.truncation, code);
    c.band = field_or(j, "band", c.band, code);
    c.threshold = field_or(j, "threshold", c.threshold, code);
    if (j.contains("oracle_method")) c.oracle_method = field<std::string>(j, "oracle_method", code);
    c.cell_size = field_or(j, "cell_size", c.cell_size, code);
    for (const auto& s : field_or(j, "s_values", json::array(), code)) c.s_values.push_back(complex_from_json(s));
    if (j.contains("outputs")) {
        const auto& o = j["outputs"];
        only_keys(o, {"dir", "stem"}, code);
        c.out_dir = field_or(o, "dir", c.out_dir, code);
        c.stem = field_or(o, "stem", c.stem, code);
    }

    auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
    if (c.delta && !positive(*c.delta)) bad_config("delta must be positive");
    if (c.mc_samples == 0 || c.quadrature_points == 0) bad_config("sample counts must be positive");
    if (!positive(c.t_grid.min) || !(c.t_grid.max >= c.t_grid.min) || c.t_grid.count == 0) {
        bad_config("t_grid needs 0 < min <= max and count >= 1");
    }
    if (c.truncation < 0) bad_config("truncation must be nonnegative");
    if (!positive(c.band) || !positive(c.threshold) || !positive(c.cell_size)) {
        bad_config("band, threshold and cell_size must be positive");
    }
    if (c.oracle_method) {
        try {
            geometry::tube_method_from_string(*c.oracle_method);
        } catch (const Error& e) {
            bad_config(e.what());
        }
    }
    if (c.stem.empty()) bad_config("output stem must not be empty");
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j{{"set", c.set},
           {"seed", c.seed},
           {"mc_samples", c.mc_samples},
           {"quadrature_points", c.quadrature_points},
           {"t_grid", {{"min", c.t_grid.min}, {"max", c.t_grid.max}, {"count", c.t_grid.count}, {"log", c.t_grid.log}}},
           {"truncation", c.truncation},
           {"band", c.band},
           {"threshold", c.threshold},
           {"cell_size", c.cell_size},
           {"outputs", {{"dir", c.out_dir}, {"stem", c.stem}}}};
    if (c.delta) j["delta"] = *c.delta;
    if (c.oracle_method) j["oracle_method"] = *c.oracle_method;
    if (!c.s_values.empty()) {
        json s = json::array();
        for (Complex z : c.s_values) s.push_back(complex_to_json(z));
        j["s_values"] = s;
    }
    return j;
}

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad_config("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        bad_config("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace

ExperimentConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

CompactSetDescriptor resolve_set(const ExperimentConfig& c, const std::string& base_dir) {
    if (c.set.is_string()) {
        std::filesystem::path p = c.set.get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        return set_from_json(read_json_file(p.string()));
    }
    return set_from_json(c.set);
}

}  // namespace fractal::io
