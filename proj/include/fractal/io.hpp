#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fractal/cdim.hpp"
#include "fractal/closed_form.hpp"
#include "fractal/compact_set.hpp"
#include "fractal/geometry.hpp"
#include "fractal/tubeformula.hpp"

namespace fractal::io {

using json = nlohmann::json;
using Complex = std::complex<double>;

/// 17 significant digits, enough to read back the same double.
std::string format_double(double x);

/// {"type": ..., parameters}. Throws InvalidDescriptor on unknown types,
/// missing fields or parameters the descriptor rejects.
json set_to_json(const geometry::CompactSetDescriptor& set);
geometry::CompactSetDescriptor set_from_json(const json& j);

json zeta_to_json(const zeta::ClosedFormZeta& z);
/// Throws ConfigError on malformed input.
zeta::ClosedFormZeta zeta_from_json(const json& j);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json poles_to_json(std::span<const cdim::Pole> poles);
std::vector<cdim::Pole> poles_from_json(const json& j);

json verdict_to_json(const tube::MeasurabilityVerdict& v);

/// Rows t,volume,method,error_bound (empty when exact).
std::string tube_samples_csv(std::span<const geometry::TubeSample> samples);

/// Rows t,direct,formula,abs_err,rel_err.
std::string comparison_csv(const tube::TubeComparison& cmp);
json comparison_summary(const tube::TubeComparison& cmp, double threshold);

struct TGrid {
    double min = 1e-3;
    double max = 1e-1;
    std::size_t count = 16;
    bool log = true;

    std::vector<double> values() const;
    bool operator==(const TGrid&) const = default;
};

/// One reproducible run. `set` is either an inline descriptor object or a path
/// to a JSON file holding one, resolved against the config's directory.
struct ExperimentConfig {
    json set;
    std::optional<double> delta;
    std::uint64_t seed = 0;
    std::size_t mc_samples = 1'000'000;
    std::size_t quadrature_points = 64;
    TGrid t_grid;
    int truncation = 50;
    double band = 20.0;
    double threshold = 1e-2;
    std::optional<std::string> oracle_method;
    double cell_size = 1e-3;
    /// Points for zeta-eval as [re, im] pairs.
    std::vector<Complex> s_values;
    std::string out_dir = ".";
    std::string stem = "run";

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError for unknown keys, a missing seed or nonpositive numbers.
ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& c);

ExperimentConfig load_config(const std::string& path);
/// Resolves an inline or file-referenced set descriptor.
geometry::CompactSetDescriptor resolve_set(const ExperimentConfig& c, const std::string& base_dir = ".");

}  // namespace fractal::io
