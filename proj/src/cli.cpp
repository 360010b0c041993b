#include "gkpwalk/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gkpwalk/analysis.hpp"
#include "gkpwalk/gkp.hpp"
#include "gkpwalk/io.hpp"
#include "gkpwalk/optics.hpp"
#include "gkpwalk/walk.hpp"

namespace gkpwalk {

namespace {

struct Grid1D {
    double min = 0.0, max = 0.0;
    int n = 0;
};

Grid1D parse_grid_1d(const std::string& text) {
    Grid1D g;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.min, &g.max, &g.n, &extra) != 3 ||
        g.n < 2 || !(g.max > g.min)) {
        throw invalid_parameter_error("grid must be 'min:max:n' with n >= 2, max > min");
    }
    return g;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CoherentSuperposition load_input_or_vacuum(const std::string& input_path, double sigma2) {
    if (input_path.empty()) {
        return make_vacuum(sigma2);
    }
    return load_state(input_path);
}

struct WalkArgs {
    int half_steps = 1;
    double w = 1.0;
    std::string axis = "position";
    std::string mode = "reduced";
    double sigma2 = kSymmetricVacuumSigma2;
    std::string input_path;
    std::string out_dir;
};

int cmd_walk(const WalkArgs& args) {
    const Axis axis = axis_from_name(args.axis);
    const CoherentSuperposition input = load_input_or_vacuum(args.input_path, args.sigma2);

    CoherentSuperposition final_state;
    json trace_doc;
    double success = 0.0;
    if (args.mode == "reduced") {
        WalkConfig cfg;
        cfg.half_steps = args.half_steps;
        cfg.w = args.w;
        cfg.axis = axis;
        cfg.input = input;
        WalkResult result = run_walk(cfg);
        success = result.success_probability;
        trace_doc = walk_result_to_json(result, args.half_steps, args.w, axis);
        trace_doc["params"]["mode"] = "reduced";
        final_state = std::move(result.kept);
    } else if (args.mode == "optical") {
        // The interferometer kicks in momentum; a position-axis output is its
        // lens conjugate.
        const bool needs_lens = axis == Axis::position;
        const CoherentSuperposition fed =
            needs_lens ? apply_fourier_lens(input, LensDirection::inverse) : input;
        ProtocolTrace trace = run_sagnac_protocol(args.half_steps, args.w, fed);
        success = trace.success_probability;
        trace_doc = protocol_trace_to_json(trace);
        trace_doc["params"]["mode"] = "optical";
        final_state = needs_lens
                          ? apply_fourier_lens(trace.final_output.branch_v, LensDirection::forward)
                          : trace.final_output.branch_v;
    } else {
        throw invalid_parameter_error("mode must be 'reduced' or 'optical'");
    }
    // Canonical term order (sorted by center) so both modes emit comparable,
    // deterministic files.
    final_state = merge_terms(final_state);

    const double kappa = 1.0 / std::sqrt(2.0 * args.half_steps * args.w * args.w);
    GkpTargetSpec target_spec;
    target_spec.logical = Logical::zero;
    target_spec.w = args.w;
    target_spec.kappa = kappa;
    target_spec.sigma2 = final_state.sigma2();
    target_spec.axis = axis;
    const double f_target = fidelity(final_state, approx_gkp(target_spec));

    const json params = {{"half_steps", args.half_steps}, {"w", args.w},
                         {"axis", args.axis},             {"mode", args.mode},
                         {"sigma2", args.sigma2}};
    const std::filesystem::path out(args.out_dir);
    save_state(out / "state.json", final_state, json{{"generator", "walk"}, {"params", params}});
    save_json_file(out / "trace.json", trace_doc);
    save_json_file(out / "summary.json",
                   json{{"params", params},
                        {"success_probability", success},
                        {"term_count", final_state.size()},
                        {"kappa", kappa},
                        {"fidelity_vs_gkp_target", f_target}});
    std::cout << "walk: wrote state.json, trace.json, summary.json under " << args.out_dir
              << "\n"
              << "  success_probability = " << fmt17(success) << "\n"
              << "  fidelity_vs_gkp_target(kappa=" << fmt17(kappa)
              << ") = " << fmt17(f_target) << "\n";
    return kExitOk;
}

struct TargetArgs {
    int logical = 0;
    double w = 1.0;
    double kappa = 0.1;
    double sigma2 = kSymmetricVacuumSigma2;
    int r_max = 0;
    std::string axis = "position";
    std::string out_path;
};

int cmd_target(const TargetArgs& args) {
    GkpTargetSpec spec;
    spec.logical = args.logical == 0 ? Logical::zero : Logical::one;
    spec.w = args.w;
    spec.kappa = args.kappa;
    spec.sigma2 = args.sigma2;
    spec.r_max = args.r_max;
    spec.axis = axis_from_name(args.axis);
    const CoherentSuperposition state = approx_gkp(spec);
    save_state(args.out_path, state,
               json{{"generator", "gkp-target"},
                    {"params",
                     {{"logical", args.logical},
                      {"w", args.w},
                      {"kappa", args.kappa},
                      {"sigma2", args.sigma2},
                      {"r_max", spec.r_max == 0 ? auto_r_max(args.kappa, args.w) : spec.r_max},
                      {"axis", args.axis}}}});
    std::cout << "target: wrote " << args.out_path << " (" << state.size() << " teeth)\n";
    return kExitOk;
}

int cmd_fidelity(const std::string& path_a, const std::string& path_b) {
    const CoherentSuperposition a = load_state(path_a);
    const CoherentSuperposition b = load_state(path_b);
    if (a.sigma2() != b.sigma2()) {
        throw schema_error("state files have mismatched sigma2");
    }
    std::cout << fmt17(fidelity(a, b)) << "\n";
    return kExitOk;
}

struct WignerArgs {
    std::string state_path;
    std::string grid;   // empty => default extent
    std::string pgrid;  // empty => same as grid
    std::string format = "csv";
    std::string out_path;  // empty => stdout
};

int cmd_wigner(const WignerArgs& args) {
    const CoherentSuperposition state = load_state(args.state_path);
    GridSpec spec = default_grid_for(state, 512);
    if (!args.grid.empty()) {
        const Grid1D gx = parse_grid_1d(args.grid);
        const Grid1D gp = args.pgrid.empty() ? gx : parse_grid_1d(args.pgrid);
        spec = GridSpec{gx.min, gx.max, gx.n, gp.min, gp.max, gp.n};
    }
    const WignerGrid grid = wigner_grid(state, spec);
    if (args.format == "json") {
        if (args.out_path.empty()) {
            std::cout << wigner_grid_to_json(grid).dump(2) << "\n";
        } else {
            save_json_file(args.out_path, wigner_grid_to_json(grid));
        }
    } else if (args.format == "csv") {
        if (args.out_path.empty()) {
            write_wigner_csv(std::cout, grid);
        } else {
            std::ostringstream buf;
            write_wigner_csv(buf, grid);
            write_text_file(args.out_path, buf.str());
        }
    } else {
        throw invalid_parameter_error("format must be 'csv' or 'json'");
    }
    return kExitOk;
}

struct DensityArgs {
    std::string state_path;
    std::string quadrature = "position";
    std::string grid;
    std::string out_path;
};

int cmd_density(const DensityArgs& args) {
    const CoherentSuperposition state = load_state(args.state_path);
    const Axis axis = axis_from_name(args.quadrature);
    Grid1D g;
    if (args.grid.empty()) {
        const GridSpec spec = default_grid_for(state, 512);
        g = axis == Axis::position ? Grid1D{spec.x_min, spec.x_max, spec.nx}
                                   : Grid1D{spec.p_min, spec.p_max, spec.np};
    } else {
        g = parse_grid_1d(args.grid);
    }
    std::vector<double> coords(g.n);
    for (int i = 0; i < g.n; ++i) {
        coords[i] = g.min + (g.max - g.min) * i / (g.n - 1);
    }
    const DensityCurve curve = quadrature_density(state, axis, coords);
    if (args.out_path.empty()) {
        write_density_csv(std::cout, curve);
    } else {
        std::ostringstream buf;
        write_density_csv(buf, curve);
        write_text_file(args.out_path, buf.str());
    }
    return kExitOk;
}

struct EnvelopeArgs {
    std::string state_path;
    double w = 1.0;
    std::string axis = "position";
    std::string out_path;
};

int cmd_envelope(const EnvelopeArgs& args) {
    const CoherentSuperposition state = load_state(args.state_path);
    const EnvelopeFit fit = fit_envelope(state, args.w, axis_from_name(args.axis));
    const json doc = envelope_fit_to_json(fit);
    if (!args.out_path.empty()) {
        save_json_file(args.out_path, doc);
    }
    std::cout << "kappa_hat = " << fmt17(fit.kappa_hat) << "  residual = "
              << fmt17(fit.residual) << "  n_points = " << fit.n_points << "\n";
    return kExitOk;
}

int cmd_equiv(int half_steps, double w, const std::string& out_path) {
    const EquivalenceReport report = equivalence_report(half_steps, w);
    if (!out_path.empty()) {
        save_json_file(out_path, equivalence_report_to_json(report));
    }
    for (const EquivalenceCheck& c : report.checks) {
        std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name
                  << "  fidelity = " << fmt17(c.fidelity) << "\n";
    }
    std::cout << (report.pass ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    return kExitOk;
}

struct TraceDumpArgs {
    int half_steps = 1;
    double w = 1.0;
    double sigma2 = kSymmetricVacuumSigma2;
    std::string mode = "optical";
    std::string input_path;
    bool final_only = false;
    std::string out_path;
};

int cmd_trace_dump(const TraceDumpArgs& args) {
    const CoherentSuperposition input = load_input_or_vacuum(args.input_path, args.sigma2);
    json doc;
    if (args.mode == "optical") {
        const ProtocolTrace trace = run_sagnac_protocol(args.half_steps, args.w, input);
        doc = args.final_only ? state_to_json(trace.final_output.branch_v)
                              : protocol_trace_to_json(trace);
    } else if (args.mode == "reduced") {
        WalkConfig cfg;
        cfg.half_steps = args.half_steps;
        cfg.w = args.w;
        cfg.axis = Axis::momentum;
        cfg.input = input;
        const WalkResult result = run_walk(cfg);
        doc = args.final_only
                  ? state_to_json(result.kept)
                  : walk_result_to_json(result, args.half_steps, args.w, Axis::momentum);
    } else {
        throw invalid_parameter_error("mode must be 'reduced' or 'optical'");
    }
    if (args.out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        save_json_file(args.out_path, doc);
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Coherent-superposition simulator for random-walk preparation of "
                 "approximate GKP states"};
    app.require_subcommand(1);
    app.set_config("--config");

    WalkArgs walk_args;
    CLI::App* walk = app.add_subcommand(
        "walk", "Run the post-selected walk and write state/trace/summary files");
    walk->add_option("--N", walk_args.half_steps, "Half steps N; the protocol runs 2N steps")
        ->required();
    walk->add_option("--w", walk_args.w, "Kick magnitude")->required();
    walk->add_option("--axis", walk_args.axis, "position|momentum")
        ->default_val("position");
    walk->add_option("--mode", walk_args.mode, "reduced|optical")->default_val("reduced");
    walk->add_option("--sigma2", walk_args.sigma2, "Vacuum variance")
        ->default_val(kSymmetricVacuumSigma2);
    walk->add_option("--input", walk_args.input_path, "Input state file (default: vacuum)");
    walk->add_option("--out", walk_args.out_dir, "Output directory")->required();

    TargetArgs target_args;
    CLI::App* target =
        app.add_subcommand("target", "Construct a normalized approximate GKP comb");
    target->add_option("--logical", target_args.logical, "0|1")->default_val(0);
    target->add_option("--w", target_args.w, "Half tooth spacing")->required();
    target->add_option("--kappa", target_args.kappa, "Envelope width")->required();
    target->add_option("--sigma2", target_args.sigma2, "Tooth variance")
        ->default_val(kSymmetricVacuumSigma2);
    target->add_option("--r-max", target_args.r_max, "Truncation radius (0 = auto)")
        ->default_val(0);
    target->add_option("--axis", target_args.axis, "position|momentum")
        ->default_val("position");
    target->add_option("--out", target_args.out_path, "Output state file")->required();

    std::string fidelity_a, fidelity_b;
    CLI::App* fid = app.add_subcommand(
        "fidelity", "Print the fidelity between two state files");
    fid->add_option("a", fidelity_a, "First state file")->required();
    fid->add_option("b", fidelity_b, "Second state file")->required();

    WignerArgs wigner_args;
    CLI::App* wig = app.add_subcommand("wigner", "Sample the Wigner function");
    wig->add_option("state", wigner_args.state_path, "State file")->required();
    wig->add_option("--grid", wigner_args.grid, "x grid 'min:max:n' (default: auto extent)");
    wig->add_option("--pgrid", wigner_args.pgrid, "p grid 'min:max:n' (default: same as --grid)");
    wig->add_option("--format", wigner_args.format, "csv|json")->default_val("csv");
    wig->add_option("--out", wigner_args.out_path, "Output file (default: stdout)");

    DensityArgs density_args;
    CLI::App* den = app.add_subcommand("density", "Sample a quadrature density");
    den->add_option("state", density_args.state_path, "State file")->required();
    den->add_option("--quadrature", density_args.quadrature, "position|momentum")
        ->default_val("position");
    den->add_option("--grid", density_args.grid, "Grid 'min:max:n' (default: auto extent)");
    den->add_option("--out", density_args.out_path, "Output file (default: stdout)");

    EnvelopeArgs envelope_args;
    CLI::App* env = app.add_subcommand("envelope", "Fit the Gaussian envelope of a comb");
    env->add_option("state", envelope_args.state_path, "State file")->required();
    env->add_option("--w", envelope_args.w, "Lattice half spacing")->required();
    env->add_option("--axis", envelope_args.axis, "position|momentum")
        ->default_val("position");
    env->add_option("--out", envelope_args.out_path, "Report file (optional)");

    int equiv_n = 1;
    double equiv_w = 1.0;
    std::string equiv_out;
    CLI::App* equiv = app.add_subcommand(
        "equiv", "Check the position/momentum walk equivalences");
    equiv->add_option("--N", equiv_n, "Half steps")->required();
    equiv->add_option("--w", equiv_w, "Kick magnitude")->required();
    equiv->add_option("--out", equiv_out, "Report file (optional)");

    TraceDumpArgs trace_args;
    CLI::App* tdump = app.add_subcommand("trace-dump", "Dump a protocol trace as JSON");
    tdump->add_option("--N", trace_args.half_steps, "Half steps")->required();
    tdump->add_option("--w", trace_args.w, "Kick magnitude")->required();
    tdump->add_option("--sigma2", trace_args.sigma2, "Vacuum variance")
        ->default_val(kSymmetricVacuumSigma2);
    tdump->add_option("--mode", trace_args.mode, "optical|reduced")->default_val("optical");
    tdump->add_option("--input", trace_args.input_path, "Input state file (default: vacuum)");
    tdump->add_flag("--final-only", trace_args.final_only, "Dump only the final state");
    tdump->add_option("--out", trace_args.out_path, "Output file (default: stdout)");

    // Lets --config appear after a subcommand name by falling through to the
    // main app, where the config sections are resolved.
    for (CLI::App* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (walk->parsed()) return cmd_walk(walk_args);
        if (target->parsed()) return cmd_target(target_args);
        if (fid->parsed()) return cmd_fidelity(fidelity_a, fidelity_b);
        if (wig->parsed()) return cmd_wigner(wigner_args);
        if (den->parsed()) return cmd_density(density_args);
        if (env->parsed()) return cmd_envelope(envelope_args);
        if (equiv->parsed()) return cmd_equiv(equiv_n, equiv_w, equiv_out);
        if (tdump->parsed()) return cmd_trace_dump(trace_args);
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const schema_error& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const invalid_parameter_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const zero_norm_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const insufficient_data_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace gkpwalk
