#include "fanomode/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fanomode/dynamics.hpp"
#include "fanomode/embedding.hpp"
#include "fanomode/errors.hpp"
#include "fanomode/fanodiag.hpp"

namespace fanomode {

namespace {

constexpr const char* version = "0.1.0";

std::string num(double v) { return format_number(v); }

std::string cnum(cplx v)
{
    return num(v.real()) + (std::signbit(v.imag()) ? "" : "+") + num(v.imag()) + "i";
}

void add_model_metadata(Table& t, const std::string& command, const RunConfig& cfg)
{
    const FanoModel& m = cfg.model;
    t.metadata = {
        {"fanomode", version},
        {"command", command},
        {"units", "frequencies and rates in units of kappa (kappa = 1 for presets)"},
        {"model", "omega_A=" + num(m.omega_A) + " omega_C=" + num(m.omega_C) + " gamma=" +
                      num(m.gamma) + " kappa=" + num(m.kappa) + " g_abs=" + num(m.g_abs) +
                      " phi=" + num(m.phi) + " eta=" + num(m.eta) + " theta_A=" +
                      num(m.theta_A) + " theta_C=" + num(m.theta_C)},
    };
}

void add_solver_metadata(Table& t, const RunConfig& cfg, const Trajectory& traj)
{
    t.metadata.emplace_back("method", to_string(traj.info.method));
    t.metadata.emplace_back("h", num(traj.info.h));
    t.metadata.emplace_back("t_max", num(traj.info.t_max));
    t.metadata.emplace_back("c1_0", num(cfg.solver.c1_0));
    t.metadata.emplace_back("settings", traj.info.settings);
    std::string params;
    for (const auto& [k, v] : traj.info.parameters)
        params += (params.empty() ? "" : " ") + k + "=" + num(v);
    t.metadata.emplace_back("parameters", params);
}

Trajectory run_method(Method method, const RunConfig& cfg)
{
    const FanoModel& m = cfg.model;
    const SolverConfig& s = cfg.solver;
    const cplx c1_0{s.c1_0, 0.0};
    switch (method) {
    case Method::volterra: {
        VolterraOptions opts;
        opts.richardson = s.richardson;
        opts.exec = s.exec;
        return solve_volterra(pole_residue_from_model(m), m.omega_A, c1_0, s.t_max, s.h, opts);
    }
    case Method::amplitudes:
        return solve_amplitudes(embed_from_model(m), c1_0, s.t_max, s.h);
    case Method::qme: {
        const double c0 = std::sqrt(std::max(0.0, 1.0 - s.c1_0 * s.c1_0));
        return solve_qme(embed_from_model(m), DensityMatrix3::from_amplitudes(c0, c1_0, 0.0),
                         s.t_max, s.h);
    }
    case Method::discretized: {
        const DiscretizedReservoir res =
            build_discretized(pole_residue_from_model(m), s.window, s.n_modes, s.exec);
        return solve_discretized(res, m.omega_A, c1_0, s.t_max, s.h, s.exec);
    }
    }
    throw InputError("unknown method");
}

std::vector<double> linspace(double a, double b, long n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

bool is_report(const Table& t) { return t.columns.empty(); }

void write_report(std::ostream& out, const Table& t, Format format, bool header)
{
    if (format == Format::json) {
        write_json(out, t, header);
        return;
    }
    if (header)
        for (const auto& [k, v] : t.metadata)
            out << "# " << k << ": " << v << '\n';
    for (const auto& [k, v] : t.summary)
        out << k << ": " << v << '\n';
}

} // namespace

std::vector<std::string> command_names()
{
    return {"spectrum", "kernel", "evolve", "compare", "lindblad-check", "fanodiag", "decay-rate"};
}

CommandResult cmd_spectrum(const RunConfig& cfg)
{
    const SpectrumConfig& sc = cfg.spectrum;
    if (!(sc.eps_max > sc.eps_min) || sc.n_points < 2)
        throw InputError("spectrum range needs eps_min < eps_max and n_points >= 2");
    if (sc.curves.empty() && !sc.from_model)
        throw InputError("spectrum needs at least one curve");

    CommandResult r;
    add_model_metadata(r.table, "spectrum", cfg);
    r.table.metadata.emplace_back("quantity", "2 pi J(eps) / gamma, eps = 2 (omega - omega_C) / kappa");
    r.table.columns.push_back("eps");

    std::vector<ReducedForm> forms;
    for (const CurveSpec& c : sc.curves) {
        if (c.eta < 0.0 || !(c.q_abs >= 0.0))
            throw InputError("curve needs eta >= 0 and q_abs >= 0");
        forms.push_back({1.0, std::polar(c.q_abs, c.delta_phi), c.eta});
        r.table.columns.push_back("eta=" + num(c.eta) + ";|q|=" + num(c.q_abs) +
                                  ";dphi=" + num(c.delta_phi));
    }
    PoleSpectral spec;
    if (sc.from_model) {
        if (!(cfg.model.gamma > 0.0))
            throw InputError("spectrum from_model needs gamma > 0");
        spec = pole_residue_from_model(cfg.model);
        r.table.columns.push_back("model");
    }

    double lowest = 0.0;
    for (double eps : linspace(sc.eps_min, sc.eps_max, sc.n_points)) {
        std::vector<double> row{eps};
        for (const ReducedForm& rf : forms)
            row.push_back(evaluate_reduced_J(rf, eps));
        if (sc.from_model) {
            const double omega = cfg.model.omega_C + 0.5 * cfg.model.kappa * eps;
            row.push_back(2.0 * pi * evaluate_J(spec, omega) / cfg.model.gamma);
        }
        for (std::size_t i = 1; i < row.size(); ++i)
            lowest = std::min(lowest, row[i]);
        r.table.add_row(std::move(row));
    }
    r.table.summary.emplace_back("min_value", num(lowest));
    if (lowest < -1e-12) {
        r.status = exit_violation;
        r.messages.push_back("spectral function negative on the grid");
    }
    return r;
}

CommandResult cmd_kernel(const RunConfig& cfg)
{
    const KernelConfig& kc = cfg.kernel;
    if (!(kc.tau_max >= 0.0) || kc.n_tau < 1)
        throw InputError("kernel needs tau_max >= 0 and n_tau >= 1");
    const PoleSpectral spec = pole_residue_from_model(cfg.model);

    CommandResult r;
    add_model_metadata(r.table, "kernel", cfg);
    r.table.metadata.emplace_back("quadrature", "trapezoid, window=" + num(kc.window) +
                                                    " n_points=" + std::to_string(kc.n_points));
    r.table.columns = {"tau", "re_regular", "im_regular", "re_quadrature", "im_quadrature",
                       "abs_difference", "error_estimate"};
    double worst = 0.0;
    for (double tau : linspace(0.0, kc.tau_max, kc.n_tau)) {
        const KernelValue kv = memory_kernel(spec, tau);
        const QuadratureResult q =
            kernel_by_quadrature(spec, tau, kc.window, kc.n_points, cfg.solver.exec);
        const double diff = std::abs(q.value - kv.regular);
        if (tau > 0.0)
            worst = std::max(worst, diff);
        r.table.add_row({tau, kv.regular.real(), kv.regular.imag(), q.value.real(),
                         q.value.imag(), diff, q.discretization_error + q.truncation_error});
    }
    r.table.summary.emplace_back("delta_weight", num(2.0 * pi * spec.J0));
    r.table.summary.emplace_back("max_abs_difference_tau_positive", num(worst));
    return r;
}

CommandResult cmd_evolve(const RunConfig& cfg)
{
    const Trajectory traj = run_method(cfg.solver.method, cfg);

    CommandResult r;
    add_model_metadata(r.table, "evolve", cfg);
    add_solver_metadata(r.table, cfg, traj);
    const bool qme = traj.info.method == Method::qme;
    r.table.columns = {"t", "c1_sq", qme ? "rho_22" : "b1_sq", "pi_j", "trace", "min_eigenvalue"};

    double worst_trace = 0.0, lowest_eig = 1.0;
    for (std::size_t n = 0; n < traj.size(); ++n) {
        const AmplitudeState& s = traj.states[n];
        double c1_sq, b1_sq, trace, eig;
        if (qme) {
            const Eigen::Matrix3cd& rho = traj.rho[n];
            c1_sq = rho(1, 1).real();
            b1_sq = rho(2, 2).real();
            trace = rho.trace().real();
            eig = min_eigenvalue(rho);
        } else {
            c1_sq = std::norm(s.c1);
            b1_sq = std::norm(s.b1);
            trace = s.norm();
            eig = min_eigenvalue(density_from_state(s));
        }
        worst_trace = std::max(worst_trace, std::abs(trace - 1.0));
        lowest_eig = std::min(lowest_eig, eig);
        r.table.add_row({s.t, c1_sq, b1_sq, s.jump_probability, trace, eig});
    }
    r.table.summary.emplace_back("max_trace_drift", num(worst_trace));
    r.table.summary.emplace_back("min_eigenvalue", num(lowest_eig));
    if (lowest_eig < -1e-10) {
        r.status = exit_violation;
        r.messages.push_back("positivity violated: min eigenvalue " + num(lowest_eig));
    }
    if (worst_trace > 1e-10) {
        r.status = exit_violation;
        r.messages.push_back("trace drift " + num(worst_trace) + " exceeds 1e-10");
    }
    return r;
}

CommandResult cmd_compare(const RunConfig& cfg)
{
    const Trajectory a = run_method(cfg.solver.method, cfg);
    const Trajectory b = run_method(cfg.solver.compare_with, cfg);

    CommandResult r;
    add_model_metadata(r.table, "compare", cfg);
    add_solver_metadata(r.table, cfg, a);
    r.table.metadata.emplace_back("compare_with", to_string(b.info.method));
    r.table.columns = {"t", "abs_c1_" + to_string(a.info.method), "abs_c1_" + to_string(b.info.method),
                       "residual"};
    double worst = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::abs(a.states[i].c1), y = std::abs(b.states[i].c1);
        worst = std::max(worst, std::abs(x - y));
        r.table.add_row({a.states[i].t, x, y, std::abs(x - y)});
    }
    r.table.summary.emplace_back("max_residual", num(worst));
    r.table.summary.emplace_back("tolerance", num(cfg.solver.tolerance));
    if (!(worst <= cfg.solver.tolerance)) {
        r.status = exit_violation;
        r.messages.push_back("max residual " + num(worst) + " exceeds tolerance " +
                             num(cfg.solver.tolerance));
    }
    return r;
}

CommandResult cmd_lindblad_check(const RunConfig& cfg)
{
    const EmbeddedQME q = embed_from_model(cfg.model);
    const KossakowskiMatrix gm = kossakowski(q);
    const LindbladReport rep = is_lindblad(q);

    CommandResult r;
    add_model_metadata(r.table, "lindblad-check", cfg);
    auto& s = r.table.summary;
    s.emplace_back("Gamma_11", cnum(gm(0, 0)));
    s.emplace_back("Gamma_12", cnum(gm(0, 1)));
    s.emplace_back("Gamma_21", cnum(gm(1, 0)));
    s.emplace_back("Gamma_22", cnum(gm(1, 1)));
    s.emplace_back("eigenvalue_min", num(rep.eigenvalues(0)));
    s.emplace_back("eigenvalue_max", num(rep.eigenvalues(1)));
    s.emplace_back("det", num(rep.det));
    s.emplace_back("det_expected", num(cfg.model.gamma * cfg.model.kappa * (1.0 - cfg.model.eta)));
    s.emplace_back("scalar_condition", num(rep.scalar_condition));
    s.emplace_back("J0", num(cfg.model.gamma / (2.0 * pi)));
    s.emplace_back("repair_threshold_J0", num(rep.repair_threshold_J0));
    const double scale = std::max(std::abs(rep.eigenvalues(1)), 1e-300);
    const bool boundary = rep.lindblad && std::abs(rep.eigenvalues(0)) <= 1e-12 * scale;
    s.emplace_back("verdict", rep.lindblad ? (boundary ? "PASS (boundary, det ~ 0)" : "PASS")
                                           : "FAIL");
    if (!rep.lindblad) {
        r.status = exit_violation;
        r.messages.push_back("Kossakowski matrix has a negative eigenvalue");
    }
    return r;
}

CommandResult cmd_fanodiag(const RunConfig& cfg)
{
    const FanodiagConfig& fc = cfg.fanodiag;
    if (!(fc.omega_max > fc.omega_min) || fc.n_points < 2)
        throw InputError("fanodiag range needs omega_min < omega_max and n_points >= 2");
    const FanoModel& m = cfg.model;
    const std::vector<double> grid =
        linspace(m.omega_C + fc.omega_min, m.omega_C + fc.omega_max, fc.n_points);
    const double max_rel = verify_lambda_identity(m, grid, fc.psi);
    const PoleSpectral spec = pole_residue_from_model(m);

    CommandResult r;
    add_model_metadata(r.table, "fanodiag", cfg);
    r.table.metadata.emplace_back("psi", num(fc.psi));
    r.table.columns = {"omega", "two_pi_lambda_sq", "two_pi_J", "abs_difference"};
    for (double w : grid) {
        const double lhs = 2.0 * pi * std::norm(fano_lambda(m, w, fc.psi));
        const double rhs = 2.0 * pi * evaluate_J(spec, w);
        r.table.add_row({w, lhs, rhs, std::abs(lhs - rhs)});
    }
    r.table.summary.emplace_back("max_relative_error", num(max_rel));
    if (!(max_rel < 1e-12)) {
        r.status = exit_violation;
        r.messages.push_back("identity error " + num(max_rel) + " exceeds 1e-12");
    }
    return r;
}

CommandResult cmd_decay_rate(const RunConfig& cfg)
{
    const FanoModel& m = cfg.model;
    const Trajectory traj = run_method(cfg.solver.method, cfg);
    const DecayFit fit = decay_rate(traj, cfg.solver.fit_t_a, cfg.solver.fit_t_b);
    const double predicted = 2.0 * pi * evaluate_J(pole_residue_from_model(m), m.omega_A);

    CommandResult r;
    add_model_metadata(r.table, "decay-rate", cfg);
    add_solver_metadata(r.table, cfg, traj);
    auto& s = r.table.summary;
    s.emplace_back("fitted_rate", num(fit.rate));
    s.emplace_back("predicted_rate_2piJ", num(predicted));
    s.emplace_back("relative_deviation",
                   predicted > 0.0 ? num(std::abs(fit.rate - predicted) / predicted) : "inf");
    s.emplace_back("bare_gamma", num(m.gamma));
    s.emplace_back("suppression_gamma_over_rate", fit.rate > 0.0 ? num(m.gamma / fit.rate) : "inf");
    s.emplace_back("fit_rms_residual", num(fit.rms_residual));
    s.emplace_back("fit_window", num(cfg.solver.fit_t_a) + ".." + num(cfg.solver.fit_t_b));

    std::vector<std::string> warnings;
    if (m.gamma > 0.1 * m.kappa || predicted > 0.1 * m.kappa)
        warnings.push_back("outside the golden-rule regime (gamma or 2 pi J(omega_A) not << kappa)");
    if (!fit.warning.empty())
        warnings.push_back(fit.warning);
    std::string joined;
    for (const auto& w : warnings)
        joined += (joined.empty() ? "" : "; ") + w;
    s.emplace_back("warnings", joined.empty() ? "none" : joined);
    for (const auto& w : warnings)
        r.messages.push_back("warning: " + w);
    return r;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    CommandResult r;
    try {
        if (name == "spectrum")
            r = cmd_spectrum(cfg);
        else if (name == "kernel")
            r = cmd_kernel(cfg);
        else if (name == "evolve")
            r = cmd_evolve(cfg);
        else if (name == "compare")
            r = cmd_compare(cfg);
        else if (name == "lindblad-check")
            r = cmd_lindblad_check(cfg);
        else if (name == "fanodiag")
            r = cmd_fanodiag(cfg);
        else if (name == "decay-rate")
            r = cmd_decay_rate(cfg);
        else {
            err << "error: unknown command '" << name << "'\n";
            return exit_usage;
        }
    } catch (const StepSizeError& e) {
        err << "solver error: " << e.what() << '\n';
        return exit_solver;
    } catch (const RecurrenceError& e) {
        err << "solver error: " << e.what() << '\n';
        return exit_solver;
    } catch (const SpectralError& e) {
        err << "solver error: " << e.what() << '\n';
        return exit_solver;
    } catch (const InconsistencyError& e) {
        err << "solver error: " << e.what() << " (residual " << e.residual << ")\n";
        return exit_solver;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (cfg.output.path != "-") {
        file.open(cfg.output.path);
        if (!file) {
            err << "error: cannot write '" << cfg.output.path << "'\n";
            return exit_usage;
        }
        sink = &file;
    }
    if (is_report(r.table))
        write_report(*sink, r.table, cfg.output.format, cfg.output.header);
    else if (cfg.output.format == Format::json)
        write_json(*sink, r.table, cfg.output.header);
    else
        write_csv(*sink, r.table, cfg.output.header);
    for (const auto& msg : r.messages)
        err << msg << '\n';
    return r.status;
}

} // namespace fanomode
