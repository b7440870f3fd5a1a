#include "fanomode/config.hpp"

#include <fstream>

#include "fanomode/errors.hpp"

namespace fanomode {

using nlohmann::json;

json default_config_json()
{
    return json{
        {"schema_version", schema_version},
        {"model",
         {{"omega_A", 0.0},
          {"omega_C", 0.0},
          {"gamma", 0.25},
          {"kappa", 1.0},
          {"g_abs", 0.5},
          {"phi", 0.0},
          {"eta", 1.0},
          {"theta_A", 0.0},
          {"theta_C", 0.0}}},
        {"solver",
         {{"method", "volterra"},
          {"compare_with", "amplitudes"},
          {"h", 1e-3},
          {"t_max", 20.0},
          {"c1_0", 1.0},
          {"richardson", true},
          {"window", 40.0},
          {"n_modes", 4001},
          {"tolerance", 1e-6},
          {"fit_window", json::array({10.0, 100.0})},
          {"execution", "serial"}}},
        {"spectrum",
         {{"eps_min", -10.0},
          {"eps_max", 10.0},
          {"n_points", 2001},
          {"from_model", false},
          {"curves",
           json::array({json{{"eta", 1.0}, {"q_abs", 2.0}, {"delta_phi", 0.0}},
                        json{{"eta", 0.0}, {"q_abs", 2.0}, {"delta_phi", 0.0}},
                        json{{"eta", 1.0}, {"q_abs", 0.0}, {"delta_phi", 0.0}}})}}},
        {"kernel", {{"tau_max", 10.0}, {"n_tau", 101}, {"window", 200.0}, {"n_points", 200001}}},
        {"fanodiag", {{"omega_min", -20.0}, {"omega_max", 20.0}, {"n_points", 4001}, {"psi", 0.0}}},
        {"output", {{"path", "-"}, {"format", "csv"}, {"header", true}}},
    };
}

std::vector<std::string> preset_names()
{
    return {"fano-curves", "markovian", "fano-q2", "weak-coupling", "anti-resonance", "non-lindblad"};
}

json preset_json(const std::string& name)
{
    if (name == "fano-curves")
        return json::object();
    if (name == "markovian")
        return {{"model", {{"gamma", 1.0}, {"g_abs", 0.0}, {"eta", 0.0}}},
                {"solver", {{"t_max", 10.0}}},
                {"spectrum", {{"from_model", true}}}};
    if (name == "fano-q2")
        return {{"model", {{"gamma", 0.25}, {"g_abs", 0.5}, {"eta", 1.0}}},
                {"solver", {{"t_max", 5.0}, {"window", 40.0}, {"n_modes", 4001}}}};
    if (name == "weak-coupling")
        return {{"model", {{"omega_A", 1.0}, {"gamma", 0.01}, {"g_abs", 0.05}, {"eta", 1.0}}},
                {"solver", {{"method", "amplitudes"}, {"t_max", 100.0}}}};
    if (name == "anti-resonance")
        return {{"model", {{"omega_A", -0.5}, {"gamma", 0.01}, {"g_abs", 0.05}, {"eta", 1.0}}},
                {"solver", {{"method", "amplitudes"}, {"t_max", 100.0}}}};
    if (name == "non-lindblad")
        return {{"model", {{"gamma", 0.25}, {"g_abs", 0.0}, {"eta", 1.2}}},
                {"solver", {{"method", "qme"}, {"t_max", 20.0}}}};
    throw InputError("unknown preset '" + name + "'");
}

namespace {

void merge_into(json& base, const json& patch, const json& schema, const std::string& where)
{
    if (!patch.is_object())
        throw InputError("expected an object at '" + where + "'");
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        const std::string path = where.empty() ? it.key() : where + "." + it.key();
        if (!schema.contains(it.key()))
            throw InputError("unknown configuration key '" + path + "'");
        const json& sub_schema = schema.at(it.key());
        if (sub_schema.is_object())
            merge_into(base[it.key()], it.value(), sub_schema, path);
        else
            base[it.key()] = it.value();
    }
}

template <class T>
T get(const json& j, const char* key, const std::string& where)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError("bad value for '" + where + "." + key + "'");
    }
}

Execution execution_from_string(const std::string& s)
{
    if (s == "serial")
        return Execution::serial;
    if (s == "parallel")
        return Execution::parallel;
    throw InputError("execution must be 'serial' or 'parallel'");
}

Format format_from_string(const std::string& s)
{
    if (s == "csv")
        return Format::csv;
    if (s == "json")
        return Format::json;
    throw InputError("format must be 'csv' or 'json'");
}

} // namespace

void merge_config(json& base, const json& patch)
{
    if (patch.contains("schema_version") && patch.at("schema_version") != schema_version)
        throw InputError("unsupported schema_version (expected " + std::to_string(schema_version) + ")");
    merge_into(base, patch, default_config_json(), "");
}

void apply_override(json& doc, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw InputError("override must look like key.path=value: '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
        value = text;

    json patch = value;
    std::size_t end = key.size();
    while (true) {
        const auto dot = key.rfind('.', end - 1);
        const std::size_t begin = dot == std::string::npos ? 0 : dot + 1;
        const std::string part = key.substr(begin, end - begin);
        if (part.empty())
            throw InputError("empty path component in '" + key + "'");
        patch = json{{part, patch}};
        if (dot == std::string::npos)
            break;
        end = dot;
    }
    merge_config(doc, patch);
}

RunConfig parse_config(const json& doc)
{
    if (doc.value("schema_version", 0) != schema_version)
        throw InputError("missing or unsupported schema_version");
    RunConfig c;

    const json& m = doc.at("model");
    c.model.omega_A = get<double>(m, "omega_A", "model");
    c.model.omega_C = get<double>(m, "omega_C", "model");
    c.model.gamma = get<double>(m, "gamma", "model");
    c.model.kappa = get<double>(m, "kappa", "model");
    c.model.g_abs = get<double>(m, "g_abs", "model");
    c.model.phi = get<double>(m, "phi", "model");
    c.model.eta = get<double>(m, "eta", "model");
    c.model.theta_A = get<double>(m, "theta_A", "model");
    c.model.theta_C = get<double>(m, "theta_C", "model");

    const json& s = doc.at("solver");
    c.solver.method = method_from_string(get<std::string>(s, "method", "solver"));
    c.solver.compare_with = method_from_string(get<std::string>(s, "compare_with", "solver"));
    c.solver.h = get<double>(s, "h", "solver");
    c.solver.t_max = get<double>(s, "t_max", "solver");
    c.solver.c1_0 = get<double>(s, "c1_0", "solver");
    c.solver.richardson = get<bool>(s, "richardson", "solver");
    c.solver.window = get<double>(s, "window", "solver");
    c.solver.n_modes = get<long>(s, "n_modes", "solver");
    c.solver.tolerance = get<double>(s, "tolerance", "solver");
    const auto fit = get<std::vector<double>>(s, "fit_window", "solver");
    if (fit.size() != 2)
        throw InputError("solver.fit_window must hold two times");
    c.solver.fit_t_a = fit[0];
    c.solver.fit_t_b = fit[1];
    c.solver.exec = execution_from_string(get<std::string>(s, "execution", "solver"));

    const json& sp = doc.at("spectrum");
    c.spectrum.eps_min = get<double>(sp, "eps_min", "spectrum");
    c.spectrum.eps_max = get<double>(sp, "eps_max", "spectrum");
    c.spectrum.n_points = get<long>(sp, "n_points", "spectrum");
    c.spectrum.from_model = get<bool>(sp, "from_model", "spectrum");
    if (!sp.at("curves").is_array())
        throw InputError("spectrum.curves must be an array");
    for (const json& cj : sp.at("curves")) {
        for (auto it = cj.begin(); it != cj.end(); ++it)
            if (it.key() != "eta" && it.key() != "q_abs" && it.key() != "delta_phi")
                throw InputError("unknown configuration key 'spectrum.curves[]." + it.key() + "'");
        CurveSpec cs;
        cs.eta = cj.value("eta", 1.0);
        cs.q_abs = cj.value("q_abs", 0.0);
        cs.delta_phi = cj.value("delta_phi", 0.0);
        c.spectrum.curves.push_back(cs);
    }

    const json& k = doc.at("kernel");
    c.kernel.tau_max = get<double>(k, "tau_max", "kernel");
    c.kernel.n_tau = get<long>(k, "n_tau", "kernel");
    c.kernel.window = get<double>(k, "window", "kernel");
    c.kernel.n_points = get<long>(k, "n_points", "kernel");

    const json& f = doc.at("fanodiag");
    c.fanodiag.omega_min = get<double>(f, "omega_min", "fanodiag");
    c.fanodiag.omega_max = get<double>(f, "omega_max", "fanodiag");
    c.fanodiag.n_points = get<long>(f, "n_points", "fanodiag");
    c.fanodiag.psi = get<double>(f, "psi", "fanodiag");

    const json& o = doc.at("output");
    c.output.path = get<std::string>(o, "path", "output");
    c.output.format = format_from_string(get<std::string>(o, "format", "output"));
    c.output.header = get<bool>(o, "header", "output");
    return c;
}

json load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open config file '" + path + "'");
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw InputError("config file '" + path + "' is not valid JSON");
    return doc;
}

} // namespace fanomode
