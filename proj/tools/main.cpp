// wva — command-line front end for the weak-value measurement toolkit.
// Every subcommand writes deterministic CSV (or JSON for `weakvalue`) so
// repeated runs with identical flags are byte-identical.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wva/estimation.hpp"
#include "wva/pointer.hpp"
#include "wva/sweep.hpp"
#include "wva/weak_value.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 2;
constexpr int kExitResolutionError = 3;
constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", value);
    return buf;
}

std::string fmt_ok(bool ok) { return ok ? "1" : "0"; }

struct Options {
    std::string scheme = "c";
    double alpha = 0.002;   // radians
    double beta = 0.002;    // radians
    double beta_true = 0.002;
    double im_target = 200.0;
    double w = 1.0;
    std::string taus = "1e-6";
    std::size_t points = std::size_t{1} << 14;
    std::string fix;
    std::string grid;
    std::string beta_grid;
    std::string output;
    bool degrees = false;

    double to_rad(double angle) const {
        return degrees ? angle * kDegToRad : angle;
    }
};

wva::AngleGrid parse_grid(const std::string& text, const Options& opt) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() != 4) {
        throw wva::InvalidArgument(
            "grid must be start:stop:count:spacing, e.g. 1e-5:0.01:400:log");
    }
    wva::AngleGrid grid{};
    try {
        grid.start = opt.to_rad(std::stod(parts[0]));
        grid.stop = opt.to_rad(std::stod(parts[1]));
        grid.count = static_cast<std::size_t>(std::stoull(parts[2]));
    } catch (const std::exception&) {
        throw wva::InvalidArgument("grid bounds/count not parseable: " + text);
    }
    if (parts[3] == "log") {
        grid.spacing = wva::GridSpacing::Log;
    } else if (parts[3] == "linear" || parts[3] == "lin") {
        grid.spacing = wva::GridSpacing::Linear;
    } else {
        throw wva::InvalidArgument("grid spacing must be linear or log");
    }
    if (grid.count < 2) {
        throw wva::InvalidArgument("grid count must be >= 2");
    }
    return grid;
}

wva::AngleGrid default_or_parsed_grid(const std::string& text,
                                      const Options& opt) {
    return text.empty() ? wva::default_angle_grid() : parse_grid(text, opt);
}

wva::SchemeKind parse_scheme(const std::string& name) {
    if (name == "a" || name == "A") return wva::SchemeKind::A;
    if (name == "b" || name == "B") return wva::SchemeKind::B;
    if (name == "c" || name == "C") return wva::SchemeKind::C;
    throw wva::InvalidArgument("scheme must be one of a, b, c");
}

wva::SchemeConfig scheme_from(const Options& opt) {
    switch (parse_scheme(opt.scheme)) {
        case wva::SchemeKind::A:
            return wva::scheme_a(opt.alpha);
        case wva::SchemeKind::B:
            return wva::scheme_b(opt.beta);
        case wva::SchemeKind::C:
        default:
            return wva::scheme_c(opt.alpha, opt.beta);
    }
}

std::vector<double> parse_taus(const std::string& text) {
    std::vector<double> taus;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            taus.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw wva::InvalidArgument("tau list entry not parseable: " + item);
        }
    }
    if (taus.empty()) {
        throw wva::InvalidArgument("tau list must not be empty");
    }
    return taus;
}

const char* estimator_name(wva::EstimatorKind kind) {
    switch (kind) {
        case wva::EstimatorKind::ImBased:
            return "im";
        case wva::EstimatorKind::AbBased:
            return "ab";
        case wva::EstimatorKind::ProbBased:
        default:
            return "prob";
    }
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        throw wva::InvalidArgument("cannot open output file " + output_path);
    }
    out << text;
}

int run_weakvalue(const Options& opt) {
    const wva::WeakValueResult wv = wva::closed_form(scheme_from(opt));
    nlohmann::json out{
        {"re", wv.re}, {"im", wv.im}, {"ab", wv.ab}, {"prob", wv.prob}};
    emit(out.dump() + "\n", opt.output);
    return kExitOk;
}

int run_sweep(const Options& opt) {
    const wva::SchemeKind kind = parse_scheme(opt.scheme);
    wva::FixedAxis axis = wva::FixedAxis::None;
    double fixed_angle = 0.0;
    if (!opt.fix.empty()) {
        const auto eq = opt.fix.find('=');
        const std::string name = opt.fix.substr(0, eq);
        if (eq == std::string::npos || (name != "alpha" && name != "beta")) {
            throw wva::InvalidArgument(
                "--fix must be alpha=<angle> or beta=<angle>");
        }
        try {
            fixed_angle = opt.to_rad(std::stod(opt.fix.substr(eq + 1)));
        } catch (const std::exception&) {
            throw wva::InvalidArgument("--fix angle not parseable: " + opt.fix);
        }
        axis = name == "alpha" ? wva::FixedAxis::Alpha : wva::FixedAxis::Beta;
    }

    const std::vector<wva::SweepRow> rows = wva::sweep(
        kind, axis, fixed_angle, default_or_parsed_grid(opt.grid, opt));
    std::string csv = "alpha_rad,beta_rad,re_aw,im_aw,ab_aw,prob,ok\n";
    for (const wva::SweepRow& row : rows) {
        csv += fmt(row.alpha) + "," + fmt(row.beta) + "," + fmt(row.re_aw) +
               "," + fmt(row.im_aw) + "," + fmt(row.ab_aw) + "," +
               fmt(row.prob) + "," + fmt_ok(row.ok) + "\n";
    }
    emit(csv, opt.output);
    return kExitOk;
}

int run_anomaly(const Options& opt) {
    const double beta_fixed = opt.beta;
    const wva::AnomalyReport report =
        opt.grid.empty()
            ? wva::anomaly_report(beta_fixed,
                                  wva::refined_angle_points(beta_fixed))
            : wva::anomaly_report(beta_fixed, parse_grid(opt.grid, opt));
    std::string csv =
        "beta_fixed,alpha_peak,anomalous_lo,anomalous_hi,normal_lo,normal_hi,"
        "ok\n";
    csv += fmt(report.beta_fixed) + "," + fmt(report.alpha_peak) + "," +
           fmt(report.anomalous.lo) + "," + fmt(report.anomalous.hi) + "," +
           fmt(report.normal.lo) + "," + fmt(report.normal.hi) + ",1\n";
    emit(csv, opt.output);
    return kExitOk;
}

int run_syserr(const Options& opt) {
    std::vector<wva::ErrorRecord> records;
    if (opt.beta_grid.empty()) {
        records = wva::error_curve({opt.beta_true}, opt.alpha);
    } else {
        records = wva::error_curve(
            parse_grid(opt.beta_grid, opt).points(), opt.alpha);
    }
    std::string csv =
        "beta_true,alpha_defl,estimator,measured,beta_hat,err,ok\n";
    for (const wva::ErrorRecord& record : records) {
        csv += fmt(record.beta_true) + "," + fmt(record.alpha_deflection) +
               "," + estimator_name(record.kind) + "," + fmt(record.measured) +
               "," + fmt(record.beta_hat) + "," + fmt(record.err) + "," +
               fmt_ok(record.ok) + "\n";
    }
    emit(csv, opt.output);
    return kExitOk;
}

int run_invert(const Options& opt) {
    const std::vector<double> roots =
        wva::invert_im_two_branch(opt.im_target, opt.alpha);
    std::string csv = "alpha,im_target,branch,beta_root,ok\n";
    for (double root : roots) {
        const char* branch = root < opt.alpha   ? "lower"
                             : root > opt.alpha ? "upper"
                                                : "peak";
        csv += fmt(opt.alpha) + "," + fmt(opt.im_target) + "," + branch + "," +
               fmt(root) + ",1\n";
    }
    emit(csv, opt.output);
    return kExitOk;
}

int run_oracle(const Options& opt) {
    const std::vector<wva::ConvergenceRow> rows =
        wva::convergence_study(scheme_from(opt), opt.w, parse_taus(opt.taus),
                               wva::QuadratureSpec{opt.points});
    std::string csv = "tau,dq_exact,dq_first,dp_exact,dp_first,weakness,ok\n";
    for (const wva::ConvergenceRow& row : rows) {
        csv += fmt(row.tau) + "," + fmt(row.dq_exact) + "," +
               fmt(row.dq_first) + "," + fmt(row.dp_exact) + "," +
               fmt(row.dp_first) + "," + fmt(row.weakness) + "," +
               fmt_ok(row.ok) + "\n";
    }
    emit(csv, opt.output);
    return kExitOk;
}

int report_error(const char* category, const std::string& detail, int code) {
    nlohmann::json err{{"error", category}, {"detail", detail}};
    std::cerr << err.dump() << "\n";
    return code;
}

int run_app(int argc, char** argv) {
    CLI::App app{"Weak-value measurement simulation and estimation toolkit"};
    app.require_subcommand(1);

    Options opt;
    // angle-valued options; converted after parsing if --degrees was given
    std::vector<std::pair<CLI::Option*, double*>> angle_options;

    auto add_common = [&opt](CLI::App* cmd) {
        cmd->add_option("--output", opt.output,
                        "Write to file instead of stdout");
        cmd->add_flag("--degrees", opt.degrees,
                      "Interpret angle-valued flags and grids in degrees");
    };
    auto add_angle = [&opt, &angle_options](CLI::App* cmd, const char* name,
                                            double* target, const char* desc) {
        angle_options.emplace_back(cmd->add_option(name, *target, desc),
                                   target);
    };

    CLI::App* weakvalue = app.add_subcommand(
        "weakvalue", "Weak value and post-selection probability as JSON");
    weakvalue->add_option("--scheme", opt.scheme, "Scheme kind: a, b or c");
    add_angle(weakvalue, "--alpha", &opt.alpha, "P1 deflection");
    add_angle(weakvalue, "--beta", &opt.beta, "P2/QWP angle");
    add_common(weakvalue);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Weak-value sweep over an angle grid as CSV");
    sweep->add_option("--scheme", opt.scheme, "Scheme kind: a, b or c");
    sweep->add_option("--fix", opt.fix,
                      "Fixed angle for kind c: alpha=<angle> or beta=<angle>");
    sweep->add_option("--grid", opt.grid,
                      "start:stop:count:spacing (default 1e-5:0.1:400:log)");
    add_common(sweep);

    CLI::App* anomaly = app.add_subcommand(
        "anomaly", "Sensitivity/post-selection anomaly report as CSV");
    add_angle(anomaly, "--beta", &opt.beta, "Fixed P2 angle");
    anomaly->add_option("--grid", opt.grid,
                        "start:stop:count:spacing (default: refined log grid)");
    add_common(anomaly);

    CLI::App* syserr = app.add_subcommand(
        "syserr", "Systematic estimation errors per estimator as CSV");
    add_angle(syserr, "--beta-true", &opt.beta_true, "True P2 angle");
    add_angle(syserr, "--alpha", &opt.alpha, "P1 deflection");
    syserr->add_option("--beta-grid", opt.beta_grid,
                       "Optional grid start:stop:count:spacing of true angles");
    add_common(syserr);

    CLI::App* invert = app.add_subcommand(
        "invert", "Two-branch inversion of |Im[A_w]| as CSV");
    add_angle(invert, "--alpha", &opt.alpha, "P1 deflection");
    invert->add_option("--im", opt.im_target, "Measured |Im[A_w]| target");
    add_common(invert);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Exact-evolution vs first-order pointer shifts as CSV");
    oracle->add_option("--scheme", opt.scheme, "Scheme kind: a, b or c");
    add_angle(oracle, "--alpha", &opt.alpha, "P1 deflection");
    add_angle(oracle, "--beta", &opt.beta, "P2/QWP angle");
    oracle->add_option("--w", opt.w, "Momentum-space std dev of the probe");
    oracle->add_option("--taus", opt.taus,
                       "Comma-separated coupling strengths");
    oracle->add_option("--points", opt.points, "Quadrature point count");
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("usage error", e.what(), kExitDomainError);
    }

    // Defaults are documented in radians; --degrees rescales only values the
    // user actually passed.
    if (opt.degrees) {
        for (auto& [option, target] : angle_options) {
            if (option->count() > 0) {
                *target *= kDegToRad;
            }
        }
    }

    try {
        if (weakvalue->parsed()) return run_weakvalue(opt);
        if (sweep->parsed()) return run_sweep(opt);
        if (anomaly->parsed()) return run_anomaly(opt);
        if (syserr->parsed()) return run_syserr(opt);
        if (invert->parsed()) return run_invert(opt);
        if (oracle->parsed()) return run_oracle(opt);
    } catch (const wva::ResolutionError& e) {
        return report_error(e.category(), e.what(), kExitResolutionError);
    } catch (const wva::Error& e) {
        return report_error(e.category(), e.what(), kExitDomainError);
    } catch (const std::exception& e) {
        return report_error("internal error", e.what(), kExitDomainError);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "{\"error\":\"internal error\",\"detail\":\"%s\"}\n",
                     e.what());
        return kExitDomainError;
    } catch (...) {
        std::fprintf(stderr, "{\"error\":\"internal error\"}\n");
        return kExitDomainError;
    }
}
