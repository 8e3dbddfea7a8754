// Command-line front end: eval / verify / spinor-flow / example.
// Exit codes: 0 success, 2 validation or config error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mfc/run.hpp"

namespace {

mfc::FrameOdeKind parse_kind(const std::string& name) {
    using K = mfc::FrameOdeKind;
    if (name == "spacelike-general") return K::SpacelikeGeneral;
    if (name == "timelike-general") return K::TimelikeGeneral;
    if (name == "spacelike-bishop") return K::SpacelikeBishop;
    if (name == "spacelike-frenet") return K::SpacelikeFrenet;
    if (name == "timelike-bishop") return K::TimelikeBishop;
    if (name == "timelike-frenet") return K::TimelikeFrenet;
    throw mfc::ConfigError("unknown --kind '" + name + "'");
}

mfc::RunConfig load_with_overrides(const std::string& config_path, std::optional<double> tol,
                                   std::optional<double> step, std::optional<double> theta0) {
    mfc::RunConfig cfg = mfc::load_config(config_path);
    if (tol) cfg.tol = *tol;
    if (step) cfg.step = *step;
    if (theta0) cfg.theta0 = *theta0;
    if (!(cfg.tol > 0.0) || !(cfg.step > 0.0)) throw mfc::ConfigError("tol and step must be > 0");
    return cfg;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mfc::IoError("cannot write output file '" + path + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Framed-curve frames, curvatures and spinor flows in Minkowski 3-space"};
    app.require_subcommand(1);

    std::string config_path, out_path, kind_name = "spacelike-general", example_name, out_dir = ".";
    std::string init_spec;
    std::optional<double> tol, step, theta0;

    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        if (needs_out) cmd->add_option("--out", out_path, "output file (default: stdout)");
        cmd->add_option("--tol", tol, "override config tol");
        cmd->add_option("--step", step, "override config step");
        cmd->add_option("--theta0", theta0, "override config theta0");
    };

    CLI::App* eval = app.add_subcommand("eval", "sample frames, curvatures and adapted data to CSV");
    add_common(eval, true);

    CLI::App* verify = app.add_subcommand("verify", "run consistency checks and report residuals");
    add_common(verify, true);

    CLI::App* flow = app.add_subcommand("spinor-flow", "integrate a spinor equation along the curve");
    add_common(flow, true);
    flow->add_option("--kind", kind_name,
                     "spacelike-general|timelike-general|spacelike-bishop|spacelike-frenet|"
                     "timelike-bishop|timelike-frenet");
    flow->add_option("--init", init_spec, "initial spinor as c1a,c1b,c2a,c2b (default: extracted)");

    CLI::App* example = app.add_subcommand("example", "emit a built-in example's config and outputs");
    example->add_option("name", example_name, "spacelike1 or timelike1")->required();
    example->add_option("--out", out_dir, "output directory (default: .)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(eval)) {
            const auto cfg = load_with_overrides(config_path, tol, step, theta0);
            if (out_path.empty()) {
                mfc::run_eval(cfg, std::cout, std::cerr);
            } else {
                auto out = open_out(out_path);
                mfc::run_eval(cfg, out, std::cerr);
            }
            return 0;
        }
        if (app.got_subcommand(verify)) {
            const auto cfg = load_with_overrides(config_path, tol, step, theta0);
            int rc;
            if (out_path.empty()) {
                rc = mfc::run_verify(cfg, std::cout);
            } else {
                auto out = open_out(out_path);
                rc = mfc::run_verify(cfg, out);
            }
            return rc;
        }
        if (app.got_subcommand(flow)) {
            const auto cfg = load_with_overrides(config_path, tol, step, theta0);
            std::optional<mfc::HSpinor> init;
            if (!init_spec.empty()) {
                double v[4];
                char sep;
                std::istringstream in(init_spec);
                if (!(in >> v[0] >> sep >> v[1] >> sep >> v[2] >> sep >> v[3]))
                    throw mfc::ConfigError("--init must be four comma-separated numbers");
                init = mfc::HSpinor{{v[0], v[1]}, {v[2], v[3]}};
            }
            const auto kind = parse_kind(kind_name);
            if (out_path.empty()) {
                mfc::run_spinor_flow(cfg, kind, init, std::cout);
            } else {
                auto out = open_out(out_path);
                mfc::run_spinor_flow(cfg, kind, init, out);
            }
            return 0;
        }
        if (app.got_subcommand(example)) {
            mfc::run_example(example_name, out_dir, std::cerr);
            return 0;
        }
    } catch (const mfc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
