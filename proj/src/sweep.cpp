#include "wva/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wva {

namespace {

constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5)-1)/2
constexpr double kPeakWidthTol = 1e-10;

double scheme_c_re(double alpha, double beta) {
    return closed_form(scheme_c(alpha, beta)).re;
}

SweepRow evaluate_row(const SchemeConfig& cfg) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
        const WeakValueResult wv = closed_form(cfg);
        return {cfg.alpha, cfg.beta, wv.re, wv.im, wv.ab, wv.prob, true};
    } catch (const OrthogonalPostselection&) {
        return {cfg.alpha, cfg.beta, nan, nan, nan, nan, false};
    }
}

void check_points(const std::vector<double>& pts) {
    if (pts.empty()) {
        throw InvalidArgument("angle point list must not be empty");
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!std::isfinite(pts[i])) {
            throw InvalidArgument("angle points must be finite");
        }
        if (i > 0 && pts[i] <= pts[i - 1]) {
            throw InvalidArgument("angle points must be strictly ascending");
        }
    }
}

}  // namespace

std::vector<double> AngleGrid::points() const {
    if (count == 0) {
        throw InvalidArgument("grid count must be >= 1");
    }
    if (!std::isfinite(start) || !std::isfinite(stop) || start > stop) {
        throw InvalidArgument("grid bounds must be finite with start <= stop");
    }
    if (spacing == GridSpacing::Log && start <= 0.0) {
        throw InvalidArgument("log spacing requires start > 0");
    }
    if (count == 1) {
        return {start};
    }
    if (start == stop) {
        throw InvalidArgument("grid with count > 1 needs start < stop");
    }
    std::vector<double> pts(count);
    const double n = static_cast<double>(count - 1);
    if (spacing == GridSpacing::Linear) {
        for (std::size_t i = 0; i < count; ++i) {
            pts[i] = start + (stop - start) * static_cast<double>(i) / n;
        }
    } else {
        const double log_start = std::log(start);
        const double log_step = (std::log(stop) - log_start) / n;
        for (std::size_t i = 0; i < count; ++i) {
            pts[i] = std::exp(log_start + log_step * static_cast<double>(i));
        }
    }
    pts.front() = start;  // pin the endpoints against exp/log rounding
    pts.back() = stop;
    return pts;
}

AngleGrid default_angle_grid() {
    return {1e-5, 0.1, 400, GridSpacing::Log};
}

std::vector<double> refined_angle_points(double focus) {
    if (!std::isfinite(focus) || focus <= 0.0) {
        throw InvalidArgument("refinement focus must be > 0");
    }
    std::vector<double> pts = default_angle_grid().points();
    const AngleGrid local{0.5 * focus, 2.0 * focus, 100, GridSpacing::Linear};
    const std::vector<double> extra = local.points();
    pts.insert(pts.end(), extra.begin(), extra.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<SweepRow> sweep(SchemeKind kind, FixedAxis fixed,
                            double fixed_angle,
                            const std::vector<double>& points) {
    if (kind == SchemeKind::C) {
        if (fixed == FixedAxis::None) {
            throw InvalidArgument("kind C sweeps need a fixed axis");
        }
    } else if (fixed != FixedAxis::None) {
        throw InvalidArgument("kinds A and B have no second angle to fix");
    }
    check_points(points);

    std::vector<SweepRow> rows;
    rows.reserve(points.size());
    for (double x : points) {
        SchemeConfig cfg{SchemeKind::A, 0.0, 0.0};
        switch (kind) {
            case SchemeKind::A:
                cfg = scheme_a(x);
                break;
            case SchemeKind::B:
                cfg = scheme_b(x);
                break;
            case SchemeKind::C:
                cfg = fixed == FixedAxis::Beta ? scheme_c(x, fixed_angle)
                                               : scheme_c(fixed_angle, x);
                break;
        }
        rows.push_back(evaluate_row(cfg));
    }
    return rows;
}

std::vector<SweepRow> sweep(SchemeKind kind, FixedAxis fixed,
                            double fixed_angle, const AngleGrid& grid) {
    return sweep(kind, fixed, fixed_angle, grid.points());
}

double find_sensitivity_peak(double beta_fixed,
                             const std::vector<double>& pts) {
    if (!std::isfinite(beta_fixed) || beta_fixed <= 0.0) {
        throw InvalidArgument("find_sensitivity_peak needs beta_fixed > 0");
    }
    check_points(pts);
    if (pts.size() < 3) {
        throw ResolutionError("peak search needs at least 3 grid points");
    }

    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double value = scheme_c_re(pts[i], beta_fixed);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    if (best == 0 || best + 1 == pts.size()) {
        throw RangeError("search range does not bracket the Re[A_w] peak");
    }

    // Golden-section refinement on the bracketing triple.
    double lo = pts[best - 1];
    double hi = pts[best + 1];
    double x1 = hi - kGoldenRatio * (hi - lo);
    double x2 = lo + kGoldenRatio * (hi - lo);
    double f1 = scheme_c_re(x1, beta_fixed);
    double f2 = scheme_c_re(x2, beta_fixed);
    while (hi - lo > kPeakWidthTol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGoldenRatio * (hi - lo);
            f2 = scheme_c_re(x2, beta_fixed);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGoldenRatio * (hi - lo);
            f1 = scheme_c_re(x1, beta_fixed);
        }
    }
    return 0.5 * (lo + hi);
}

double find_sensitivity_peak(double beta_fixed, const AngleGrid& search) {
    return find_sensitivity_peak(beta_fixed, search.points());
}

AnomalyReport anomaly_report(double beta_fixed,
                             const std::vector<double>& pts) {
    // Above pi/4 the post-selection probability stops rising with alpha and
    // the rising/falling classification below loses its meaning.
    if (!std::isfinite(beta_fixed) || beta_fixed <= 0.0 ||
        beta_fixed >= std::numbers::pi / 4.0) {
        throw InvalidArgument("anomaly_report needs beta_fixed in (0, pi/4)");
    }
    check_points(pts);
    if (pts.front() >= beta_fixed || pts.back() <= beta_fixed) {
        throw InvalidArgument("grid must span both sides of beta_fixed");
    }
    const auto below = std::count_if(
        pts.begin(), pts.end(), [beta_fixed](double a) { return a < beta_fixed; });
    const auto above = std::count_if(
        pts.begin(), pts.end(), [beta_fixed](double a) { return a > beta_fixed; });
    if (below < 3 || above < 3) {
        throw ResolutionError(
            "anomaly classification needs >= 3 grid points per side");
    }

    const std::vector<SweepRow> rows =
        sweep(SchemeKind::C, FixedAxis::Beta, beta_fixed, pts);

    // Classify adjacent pairs by the joint finite-difference signs of
    // Re[A_w] and P. The admissible pattern is a run where both rise (the
    // anomalous regime) followed by a run where Re falls while P rises.
    std::size_t boundary = rows.size();
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const double d_re = rows[i + 1].re_aw - rows[i].re_aw;
        const double d_prob = rows[i + 1].prob - rows[i].prob;
        if (!(d_prob > 0.0)) {
            throw ResolutionError(
                "post-selection probability not increasing across grid step");
        }
        if (d_re > 0.0) {
            if (boundary != rows.size()) {
                throw ResolutionError(
                    "Re[A_w] not unimodal on this grid; refine the grid");
            }
        } else if (boundary == rows.size()) {
            boundary = i;
        }
    }
    if (boundary == rows.size()) {
        throw RangeError("grid ends before the Re[A_w] peak");
    }

    const double alpha_peak = find_sensitivity_peak(beta_fixed, pts);
    const double boundary_alpha = rows[boundary].alpha;
    return {beta_fixed, alpha_peak, Interval{0.0, boundary_alpha},
            Interval{boundary_alpha, rows.back().alpha}};
}

AnomalyReport anomaly_report(double beta_fixed, const AngleGrid& grid) {
    return anomaly_report(beta_fixed, grid.points());
}

}  // namespace wva
