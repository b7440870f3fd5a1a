// config.hpp: run configuration: JSON file + presets + dotted-path overrides

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fanomode/dynamics.hpp"
#include "fanomode/spectral.hpp"

namespace fanomode {

inline constexpr int schema_version = 1;

enum class Format { csv, json };

struct CurveSpec {
    double eta = 1.0;
    double q_abs = 0.0;
    double delta_phi = 0.0;
};

struct SolverConfig {
    Method method = Method::volterra;
    Method compare_with = Method::amplitudes;
    double h = 1e-3;
    double t_max = 20.0;
    double c1_0 = 1.0;  // initial atomic amplitude (real)
    bool richardson = true;
    double window = 40.0;
    long n_modes = 4001;
    double tolerance = 1e-6;
    double fit_t_a = 10.0;
    double fit_t_b = 100.0;
    Execution exec = Execution::serial;
};

struct SpectrumConfig {
    double eps_min = -10.0;
    double eps_max = 10.0;
    long n_points = 2001;
    bool from_model = false;
    std::vector<CurveSpec> curves;
};

struct KernelConfig {
    double tau_max = 10.0;
    long n_tau = 101;
    double window = 200.0;
    long n_points = 200001;
};

struct FanodiagConfig {
    double omega_min = -20.0;  // offsets from omega_C
    double omega_max = 20.0;
    long n_points = 4001;
    double psi = 0.0;
};

struct OutputConfig {
    std::string path = "-";
    Format format = Format::csv;
    bool header = true;
};

struct RunConfig {
    FanoModel model;
    SolverConfig solver;
    SpectrumConfig spectrum;
    KernelConfig kernel;
    FanodiagConfig fanodiag;
    OutputConfig output;
};

// Complete default document; every accepted key appears here.
nlohmann::json default_config_json();

// Names accepted by preset_json.
std::vector<std::string> preset_names();

// Partial document overlaid on the defaults. Throws InputError for unknown names.
nlohmann::json preset_json(const std::string& name);

// Overlays `patch` onto `base`; throws InputError on keys absent from the
// default schema or on a schema_version mismatch.
void merge_config(nlohmann::json& base, const nlohmann::json& patch);

// "solver.h=1e-4": value parsed as JSON when possible, otherwise as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

RunConfig parse_config(const nlohmann::json& doc);

nlohmann::json load_config_file(const std::string& path);

} // namespace fanomode
