#include "wva/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wva {

namespace {

constexpr double kRootRelTol = 1e-12;
// Targets within this relative band of the peak value collapse to the
// single stationary root at beta = alpha.
constexpr double kPeakRelTol = 1e-9;
constexpr int kMaxBisectionIters = 200;

// |Im[A_w,C]|(beta) at fixed alpha, in the cancellation-free form.
double im_magnitude(double alpha, double beta) {
    const double sa = std::sin(alpha);
    const double ca = std::cos(alpha);
    const double sb = std::sin(beta);
    const double cb = std::cos(beta);
    const double denom = 2.0 * (sa * sa * cb * cb + ca * ca * sb * sb);
    return std::sin(2.0 * beta) * std::cos(2.0 * alpha) / denom;
}

// Bisection for im_magnitude(alpha, .) = target on a bracket where the
// function is monotone. `rising` selects the branch orientation.
double bisect_branch(double alpha, double target, double lo, double hi,
                     bool rising) {
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < kMaxBisectionIters; ++i) {
        mid = 0.5 * (lo + hi);
        const double value = im_magnitude(alpha, mid);
        if (std::abs(value - target) <= kRootRelTol * target) {
            break;
        }
        if ((value < target) == rising) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) {
            break;
        }
    }
    return mid;
}

}  // namespace

double measure(const SchemeConfig& cfg, EstimatorKind kind) {
    const WeakValueResult wv = closed_form(cfg);
    switch (kind) {
        case EstimatorKind::ImBased:
            return std::abs(wv.im);
        case EstimatorKind::AbBased:
            return wv.ab;
        case EstimatorKind::ProbBased:
        default:
            return wv.prob;
    }
}

double estimate_beta(double measured, EstimatorKind kind) {
    if (!std::isfinite(measured)) {
        throw InvalidArgument("measured value must be finite");
    }
    if (kind == EstimatorKind::ProbBased) {
        if (measured <= 0.0 || measured > 1.0) {
            throw InvalidArgument(
                "probability-based inversion needs measured in (0, 1]");
        }
        return std::asin(std::sqrt(measured));
    }
    if (measured <= 0.0) {
        throw InvalidArgument("magnitude-based inversion needs measured > 0");
    }
    return std::atan(1.0 / measured);
}

ErrorRecord systematic_error(double beta_true, double alpha_deflection,
                             EstimatorKind kind) {
    const double measured = measure(scheme_c(alpha_deflection, beta_true), kind);
    const double beta_hat = estimate_beta(measured, kind);
    return {beta_true, alpha_deflection, kind,
            measured,  beta_hat,         beta_hat - beta_true,
            true};
}

std::vector<double> invert_im_two_branch(double im_target, double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0 ||
        alpha >= std::numbers::pi / 4.0) {
        throw InvalidArgument("invert_im_two_branch needs alpha in (0, pi/4)");
    }
    if (!std::isfinite(im_target) || im_target <= 0.0) {
        throw InvalidArgument("invert_im_two_branch needs im_target > 0");
    }

    const double peak = 1.0 / std::tan(2.0 * alpha);  // value at beta = alpha
    if (std::abs(im_target - peak) <= kPeakRelTol * peak) {
        return {alpha};
    }
    if (im_target > peak) {
        return {};
    }

    std::vector<double> roots;
    // Rising branch (0, alpha): the function falls to 0 as beta -> 0, so a
    // root always exists below the peak.
    roots.push_back(bisect_branch(alpha, im_target, 1e-18, alpha, true));
    // Falling branch (alpha, pi/4): exits the interval at cos(2 alpha), so
    // the second root only exists for targets above that floor.
    const double quarter_pi = std::numbers::pi / 4.0;
    if (im_target > im_magnitude(alpha, quarter_pi)) {
        roots.push_back(
            bisect_branch(alpha, im_target, alpha, quarter_pi, false));
    }
    return roots;
}

std::vector<ErrorRecord> error_curve(std::vector<double> beta_grid,
                                     double alpha_deflection) {
    std::sort(beta_grid.begin(), beta_grid.end());
    const EstimatorKind kinds[] = {EstimatorKind::ImBased,
                                   EstimatorKind::AbBased,
                                   EstimatorKind::ProbBased};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<ErrorRecord> records;
    records.reserve(3 * beta_grid.size());
    for (double beta : beta_grid) {
        for (EstimatorKind kind : kinds) {
            try {
                records.push_back(
                    systematic_error(beta, alpha_deflection, kind));
            } catch (const Error&) {
                records.push_back(
                    {beta, alpha_deflection, kind, nan, nan, nan, false});
            }
        }
    }
    return records;
}

}  // namespace wva
