// fanomode: command-line driver for the spectral, embedding, dynamics and
// Fano-diagonalization checks. Emits CSV (or JSON) data, never plots.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fanomode/commands.hpp"
#include "fanomode/config.hpp"
#include "fanomode/errors.hpp"

int main(int argc, char** argv)
{
    using namespace fanomode;

    CLI::App app{"Pseudomode treatment of Fano interference in dissipative cavity QED"};
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string config_path, out_path, format, preset;
    std::vector<std::string> overrides;
    bool no_header = false;

    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--preset", preset, "Named preset overlaid before --config")
        ->check(CLI::IsMember(preset_names()));
    app.add_option("--out", out_path, "Output file ('-' for stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--set", overrides, "Dotted-path override, e.g. solver.h=1e-4");
    app.add_flag("--no-header", no_header, "Omit the '#' metadata header");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"spectrum", "2 pi J(eps)/gamma curves (defaults: the three reference curves)"},
        {"kernel", "memory kernel: residue form vs trapezoid quadrature"},
        {"evolve", "integrate the dynamics with solver.method"},
        {"compare", "run solver.method and solver.compare_with, emit residuals"},
        {"lindblad-check", "Kossakowski matrix, eigenvalues and Lindblad verdict"},
        {"fanodiag", "Fano-diagonalized coupling 2 pi |Lambda|^2 vs 2 pi J (eta = 1)"},
        {"decay-rate", "fitted decay rate of |c1|^2 vs 2 pi J(omega_A)"},
    };
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help)->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    RunConfig cfg;
    try {
        nlohmann::json doc = default_config_json();
        if (!preset.empty())
            merge_config(doc, preset_json(preset));
        if (!config_path.empty())
            merge_config(doc, load_config_file(config_path));
        for (const auto& o : overrides)
            apply_override(doc, o);
        if (!out_path.empty())
            doc["output"]["path"] = out_path;
        if (!format.empty())
            doc["output"]["format"] = format;
        if (no_header)
            doc["output"]["header"] = false;
        cfg = parse_config(doc);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    return run_command(app.get_subcommands().front()->get_name(), cfg, std::cout, std::cerr);
}
