#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfc/adapted_frame.hpp"
#include "mfc/registry.hpp"
#include "mfc/spinor_ode.hpp"

namespace mfc {

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct RunConfig {
    CurveCharacter character = CurveCharacter::Spacelike;
    std::array<std::string, 3> gamma, nu1, nu2;
    double s_min = 0.0, s_max = 1.0;
    int samples = 101;
    double step = 1e-3;
    double theta0 = 0.0;
    double tol = 1e-6;
    std::optional<std::string> out_eval, out_plot, out_verify, out_flow;
};

// --------------------------------------------------------------------------
// Config document: JSON object with exactly the RunConfig keys; unknown keys
// are rejected so typos fail fast.
// --------------------------------------------------------------------------

inline RunConfig config_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    static const char* known[] = {"character", "gamma", "nu1", "nu2",    "s_min", "s_max",
                                  "samples",   "step",  "theta0", "tol", "outputs"};
    for (const auto& [key, _] : doc.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown config key '" + key + "'");
    }

    RunConfig cfg;
    try {
        const std::string ch = doc.at("character").get<std::string>();
        if (ch == "spacelike") cfg.character = CurveCharacter::Spacelike;
        else if (ch == "timelike") cfg.character = CurveCharacter::Timelike;
        else throw ConfigError("character must be \"spacelike\" or \"timelike\"");

        const auto get3 = [&](const char* key, std::array<std::string, 3>& out) {
            const auto& arr = doc.at(key);
            if (!arr.is_array() || arr.size() != 3)
                throw ConfigError(std::string(key) + " must be an array of 3 expression strings");
            for (int i = 0; i < 3; ++i) out[i] = arr.at(i).get<std::string>();
        };
        get3("gamma", cfg.gamma);
        get3("nu1", cfg.nu1);
        get3("nu2", cfg.nu2);

        cfg.s_min = doc.at("s_min").get<double>();
        cfg.s_max = doc.at("s_max").get<double>();
        cfg.samples = doc.at("samples").get<int>();
        if (doc.contains("step")) cfg.step = doc.at("step").get<double>();
        if (doc.contains("theta0")) cfg.theta0 = doc.at("theta0").get<double>();
        if (doc.contains("tol")) cfg.tol = doc.at("tol").get<double>();
        if (doc.contains("outputs")) {
            const auto& o = doc.at("outputs");
            if (!o.is_object()) throw ConfigError("outputs must be an object");
            for (const auto& [key, val] : o.items()) {
                if (key == "eval_csv") cfg.out_eval = val.get<std::string>();
                else if (key == "plot_csv") cfg.out_plot = val.get<std::string>();
                else if (key == "verify_report") cfg.out_verify = val.get<std::string>();
                else if (key == "flow_csv") cfg.out_flow = val.get<std::string>();
                else throw ConfigError("unknown outputs key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    if (!(cfg.s_min < cfg.s_max)) throw ConfigError("s_min < s_max required");
    if (cfg.samples < 2) throw ConfigError("samples >= 2 required");
    if (!(cfg.step > 0.0)) throw ConfigError("step > 0 required");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol > 0 required");
    return cfg;
}

inline std::string config_to_json(const RunConfig& cfg) {
    nlohmann::json doc;
    doc["character"] = cfg.character == CurveCharacter::Spacelike ? "spacelike" : "timelike";
    doc["gamma"] = cfg.gamma;
    doc["nu1"] = cfg.nu1;
    doc["nu2"] = cfg.nu2;
    doc["s_min"] = cfg.s_min;
    doc["s_max"] = cfg.s_max;
    doc["samples"] = cfg.samples;
    doc["step"] = cfg.step;
    doc["theta0"] = cfg.theta0;
    doc["tol"] = cfg.tol;
    return doc.dump(2) + "\n";
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

inline FramedCurveSpec to_framed_spec(const RunConfig& cfg) {
    FramedCurveSpec spec;
    spec.character = cfg.character;
    for (int i = 0; i < 3; ++i) {
        spec.gamma[i] = parse(cfg.gamma[i]);
        spec.nu1[i] = parse(cfg.nu1[i]);
        spec.nu2[i] = parse(cfg.nu2[i]);
    }
    spec.s_min = cfg.s_min;
    spec.s_max = cfg.s_max;
    return spec;
}

inline RunConfig builtin_config(std::string_view name) {
    const BuiltinExample& e = find_builtin(name);
    RunConfig cfg;
    cfg.character = e.character;
    for (int i = 0; i < 3; ++i) {
        cfg.gamma[i] = std::string(e.gamma[i]);
        cfg.nu1[i] = std::string(e.nu1[i]);
        cfg.nu2[i] = std::string(e.nu2[i]);
    }
    cfg.s_min = e.s_min;
    cfg.s_max = e.s_max;
    cfg.samples = e.samples;
    return cfg;
}

namespace detail {

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

inline std::vector<double> step_grid(double a, double b, double step) {
    const int n = std::max(2, static_cast<int>(std::ceil((b - a) / step)) + 1);
    return linspace(a, b, n);
}

inline double gram_defect_of(const Triad& t, CurveCharacter character, int delta) {
    const double g_mu = character == CurveCharacter::Spacelike ? 1.0 : -1.0;
    const double g_n1 = character == CurveCharacter::Spacelike ? double(delta) : 1.0;
    const double g_n2 = character == CurveCharacter::Spacelike ? -double(delta) : 1.0;
    return std::max({std::abs(inner(t.mu, t.mu) - g_mu), std::abs(inner(t.nu1, t.nu1) - g_n1),
                     std::abs(inner(t.nu2, t.nu2) - g_n2), std::abs(inner(t.mu, t.nu1)),
                     std::abs(inner(t.mu, t.nu2)), std::abs(inner(t.nu1, t.nu2))});
}

}  // namespace detail

// --------------------------------------------------------------------------
// eval: one CSV row per grid point.
// Columns: s,g1,g2,g3,mu1,mu2,mu3,n11,n12,n13,n21,n22,n23,delta,
//          l1,l2,l3,alpha,theta,p,q,l2b,l3b,gram_defect
// theta is the Bishop angle integrated from theta0 at s_min; p and q use the
// Frenet-type angle internally. Rows where |l2| <= |l3| (spacelike) or
// (l2,l3) = 0 (timelike) emit "nan" for p and q and warn on `diag`.
// --------------------------------------------------------------------------

inline void run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
    const FramedCurveSpec spec = to_framed_spec(cfg);
    validate_framed(spec, cfg.samples, cfg.tol);

    const auto grid = detail::linspace(cfg.s_min, cfg.s_max, cfg.samples);
    const auto l1_fn = [&](double s) { return curvatures_at(spec, s).l1; };
    const auto theta = theta_bishop(l1_fn, cfg.s_min, cfg.theta0, grid);

    out << "s,g1,g2,g3,mu1,mu2,mu3,n11,n12,n13,n21,n22,n23,delta,"
           "l1,l2,l3,alpha,theta,p,q,l2b,l3b,gram_defect\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid[i];
        const FrameSample f = frame_at(spec, s);
        const CurvatureJets cj = curvature_jets(spec, s);
        const CurvatureTuple c = cj.value();
        const double th = theta[i].second;
        const auto lb = bishop_curvatures(c.l2, c.l3, th, cfg.character);
        double p = std::nan(""), q = std::nan("");
        try {
            const auto ft = frenet_type_theta(c.l2, c.l3, cfg.character);
            const double rate = frenet_type_theta_rate(cj, cfg.character);
            p = ft.p;
            q = pq_curvature_q(c.l1, rate);
        } catch (const Error& e) {
            diag << "warning: p,q not computable at s=" << format_double(s) << ": " << e.what() << "\n";
        }
        const double gd = detail::gram_defect_of({f.mu, f.nu1, f.nu2}, cfg.character, f.delta);
        out << format_double(s) << ',' << csv_fields(f.gamma) << ',' << csv_fields(f.mu) << ','
            << csv_fields(f.nu1) << ',' << csv_fields(f.nu2) << ',' << f.delta << ','
            << format_double(c.l1) << ',' << format_double(c.l2) << ',' << format_double(c.l3) << ','
            << format_double(c.alpha) << ',' << format_double(th) << ',' << format_double(p) << ','
            << format_double(q) << ',' << format_double(lb.l2b) << ',' << format_double(lb.l3b) << ','
            << format_double(gd) << '\n';
    }
}

// --------------------------------------------------------------------------
// verify: framed conditions, Gram checks, frame-equation finite-difference
// residuals, and spinor/frame flow cross-validation. Returns 0 iff every
// residual is within cfg.tol.
// --------------------------------------------------------------------------

inline int run_verify(const RunConfig& cfg, std::ostream& report) {
    const FramedCurveSpec spec = to_framed_spec(cfg);
    const ValidationReport v = probe_framed(spec, cfg.samples, cfg.tol);

    bool all_ok = true;
    std::string first_fail;
    const auto line = [&](const std::string& name, double residual, double tol) {
        const bool ok = residual <= tol;
        report << name << ": max residual " << format_double(residual) << " (tol " << format_double(tol)
               << ") " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok && all_ok) { all_ok = false; first_fail = name; }
        if (!ok) all_ok = false;
    };

    if (!v.pass)
        report << "framed-curve validation FAILED: " << v.failing_condition
               << " at s=" << format_double(v.failing_s) << "\n";
    if (v.orientation == -1) report << "note: orientation epsilon = -1 (mu = -nu1 x nu2)\n";
    if (spec.character == CurveCharacter::Spacelike)
        report << "note: delta = " << v.delta << "\n";

    line("framed conditions <gamma',nu_i> = 0", v.max_orthogonality_defect, cfg.tol);
    line("frame Gram matrix", v.max_gram_defect, cfg.tol);
    line("gamma' = alpha mu", v.max_speed_defect, cfg.tol);

    // Frame-equation residual: central differences of the frame fields
    // against the kind matrix with jet-computed curvatures.
    {
        const double h = 1e-5;
        double worst = 0.0;
        const int n = std::min(cfg.samples, 201);
        for (int i = 0; i < n; ++i) {
            const double s = cfg.s_min + h + (cfg.s_max - cfg.s_min - 2 * h) * i / (n - 1);
            const FrameSample fp = frame_at(spec, s + h), fm = frame_at(spec, s - h);
            const FrameSample f0 = frame_at(spec, s);
            const CurvatureTuple c = curvatures_at(spec, s);
            const auto m = kind_matrix(spec.character == CurveCharacter::Spacelike
                                           ? FrameOdeKind::SpacelikeGeneral
                                           : FrameOdeKind::TimelikeGeneral,
                                       GeneralCurvatures{c.l1, c.l2, c.l3}, f0.delta);
            const Vec3 rows[3] = {f0.mu, f0.nu1, f0.nu2};
            const Vec3 d[3] = {(1 / (2 * h)) * (fp.mu - fm.mu), (1 / (2 * h)) * (fp.nu1 - fm.nu1),
                               (1 / (2 * h)) * (fp.nu2 - fm.nu2)};
            for (int r = 0; r < 3; ++r) {
                const Vec3 rhs = m[r][0] * rows[0] + m[r][1] * rows[1] + m[r][2] * rows[2];
                worst = std::max(worst, abs_max(d[r] - rhs));
            }
        }
        line("frame equations (finite differences vs curvatures)", worst, std::max(cfg.tol, 1e-6));
    }

    // Spinor flow cross-validation: propagate the curve's curvature
    // functions from a canonical representable spinor and compare the
    // reconstructed triads with the frame flow from the matching start.
    {
        const auto curv_fn = [&](double s) -> FrameCurvatures {
            const CurvatureTuple c = curvatures_at(spec, s);
            return GeneralCurvatures{c.l1, c.l2, c.l3};
        };
        const auto kind = spec.character == CurveCharacter::Spacelike ? FrameOdeKind::SpacelikeGeneral
                                                                      : FrameOdeKind::TimelikeGeneral;
        const auto grid = detail::step_grid(cfg.s_min, cfg.s_max, cfg.step);
        const HSpinor init{{1, 0}, {0, 0}};
        const auto flow = propagate_spinor(kind, curv_fn, init, grid);
        const auto frames = reconstruct_frames(flow, spec.character);
        const auto ref = propagate_frame(kind, curv_fn, frames.front(), grid, 1.0);
        double worst = 0.0, norm_worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max({worst, abs_max(frames[i].mu - ref[i].frame.mu),
                              abs_max(frames[i].nu1 - ref[i].frame.nu1),
                              abs_max(frames[i].nu2 - ref[i].frame.nu2)});
            norm_worst = std::max(norm_worst, flow[i].norm_defect);
        }
        line("spinor/frame flow agreement (basis start)", worst, std::max(cfg.tol, 1e-6));
        line("spinor norm conservation", norm_worst, std::max(cfg.tol, 1e-8));
    }

    if (!v.pass) {
        report << "RESULT: FAIL (" << v.failing_condition << ")\n";
        return 2;
    }
    report << "RESULT: " << (all_ok ? "PASS" : "FAIL (" + first_fail + ")") << "\n";
    return all_ok ? 0 : 2;
}

// --------------------------------------------------------------------------
// spinor-flow: integrate one spinor equation kind along the configured
// curve's curvatures and emit s, the four spinor components, the norm
// defect, and the pointwise distance to the matching frame flow.
// --------------------------------------------------------------------------

inline void run_spinor_flow(const RunConfig& cfg, FrameOdeKind kind, std::optional<HSpinor> init,
                            std::ostream& out) {
    const FramedCurveSpec spec = to_framed_spec(cfg);
    validate_framed(spec, cfg.samples, cfg.tol);
    if (is_timelike_kind(kind) != (cfg.character == CurveCharacter::Timelike))
        throw ConfigError("flow kind does not match the configured curve character");

    const auto grid = detail::step_grid(cfg.s_min, cfg.s_max, cfg.step);

    // Half-step lattice carrying the Bishop angle, so RK midpoints hit
    // precomputed values exactly.
    std::vector<double> half(2 * grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        half[2 * i] = grid[i];
        half[2 * i + 1] = 0.5 * (grid[i] + grid[i + 1]);
    }
    half.back() = grid.back();
    const auto l1_fn = [&](double s) { return curvatures_at(spec, s).l1; };
    const auto theta = theta_bishop(l1_fn, cfg.s_min, cfg.theta0, half);
    const auto theta_at = [&](double s) {
        const double hstep = (half.back() - half.front()) / (half.size() - 1);
        const auto idx = static_cast<std::size_t>(std::llround((s - half.front()) / hstep));
        return theta[std::min(idx, theta.size() - 1)].second;
    };

    const auto curv_fn = [&](double s) -> FrameCurvatures {
        const CurvatureJets cj = curvature_jets(spec, s);
        const CurvatureTuple c = cj.value();
        switch (kind) {
            case FrameOdeKind::SpacelikeGeneral:
            case FrameOdeKind::TimelikeGeneral:
                return GeneralCurvatures{c.l1, c.l2, c.l3};
            case FrameOdeKind::SpacelikeBishop:
            case FrameOdeKind::TimelikeBishop:
                return bishop_curvatures(c.l2, c.l3, theta_at(s), cfg.character);
            default: {
                const auto ft = frenet_type_theta(c.l2, c.l3, cfg.character);
                return FrenetCurvatures{ft.p, pq_curvature_q(c.l1, frenet_type_theta_rate(cj, cfg.character))};
            }
        }
    };

    HSpinor start;
    if (init) {
        start = *init;
    } else {
        const FrameSample f = frame_at(spec, cfg.s_min);
        Triad t{f.mu, f.nu1, f.nu2};
        if (kind == FrameOdeKind::SpacelikeBishop || kind == FrameOdeKind::TimelikeBishop) {
            const auto a = adapt_frame(f, cfg.theta0, cfg.character);
            t = {a.mu, a.nu1b, a.nu2b};
        } else if (kind == FrameOdeKind::SpacelikeFrenet || kind == FrameOdeKind::TimelikeFrenet) {
            const CurvatureTuple c = curvatures_at(spec, cfg.s_min);
            const auto ft = frenet_type_theta(c.l2, c.l3, cfg.character);
            const auto a = adapt_frame(f, ft.theta, cfg.character);
            t = {a.mu, a.nu1b, a.nu2b};
        }
        start = spinor_from_frame(t, cfg.character);  // honest failure if not representable
    }

    const auto flow = propagate_spinor(kind, curv_fn, start, grid);
    const auto frames = reconstruct_frames(flow, cfg.character);
    const auto ref = propagate_frame(kind, curv_fn, frames.front(), grid, 1.0);

    out << "s,c1a,c1b,c2a,c2b,norm_defect,recon_residual\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double res = std::max({abs_max(frames[i].mu - ref[i].frame.mu),
                                     abs_max(frames[i].nu1 - ref[i].frame.nu1),
                                     abs_max(frames[i].nu2 - ref[i].frame.nu2)});
        const HSpinor& p = flow[i].spinor;
        out << format_double(grid[i]) << ',' << format_double(p.c1.a) << ',' << format_double(p.c1.b)
            << ',' << format_double(p.c2.a) << ',' << format_double(p.c2.b) << ','
            << format_double(flow[i].norm_defect) << ',' << format_double(res) << '\n';
    }
}

// --------------------------------------------------------------------------
// example: write config, eval CSV, verify report, and plot data for one of
// the built-in curves.
// --------------------------------------------------------------------------

inline void run_example(std::string_view name, const std::string& out_dir, std::ostream& diag) {
    const RunConfig cfg = builtin_config(name);  // throws UnknownExample
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");

    const auto open = [&](const std::string& file) {
        std::ofstream out(out_dir + "/" + file, std::ios::binary);
        if (!out) throw IoError("cannot write '" + out_dir + "/" + file + "'");
        return out;
    };

    {
        auto out = open(std::string(name) + ".json");
        out << config_to_json(cfg);
    }
    {
        auto out = open(std::string(name) + "_eval.csv");
        run_eval(cfg, out, diag);
    }
    {
        auto out = open(std::string(name) + "_verify.txt");
        run_verify(cfg, out);
    }
    {
        auto out = open(std::string(name) + "_plot.csv");
        const FramedCurveSpec spec = to_framed_spec(cfg);
        out << "s,g1,g2,g3\n";
        for (int i = 0; i < cfg.samples; ++i) {
            const double s = cfg.s_min + (cfg.s_max - cfg.s_min) * i / (cfg.samples - 1);
            Vec3 g{eval(spec.gamma[0], s), eval(spec.gamma[1], s), eval(spec.gamma[2], s)};
            out << format_double(s) << ',' << csv_fields(g) << '\n';
        }
    }
}

}  // namespace mfc
