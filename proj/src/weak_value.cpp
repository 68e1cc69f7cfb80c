#include "wva/weak_value.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wva {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_angle(double value, const char* name) {
    if (!std::isfinite(value) || std::abs(value) >= kHalfPi) {
        throw InvalidArgument(std::string(name) +
                              " must be finite and in (-pi/2, pi/2)");
    }
}

WeakValueResult make_result(Complex aw, double prob) {
    return {aw, aw.real(), aw.imag(), std::abs(aw),
            std::clamp(prob, 0.0, 1.0)};
}

}  // namespace

SchemeConfig scheme_a(double alpha) {
    check_angle(alpha, "alpha");
    return {SchemeKind::A, alpha, 0.0};
}

SchemeConfig scheme_b(double beta) {
    check_angle(beta, "beta");
    return {SchemeKind::B, 0.0, beta};
}

SchemeConfig scheme_c(double alpha, double beta) {
    check_angle(alpha, "alpha");
    check_angle(beta, "beta");
    return {SchemeKind::C, alpha, beta};
}

PolarizationState pre_state(const SchemeConfig& cfg) {
    if (cfg.kind == SchemeKind::B) {
        // (|H> + |V>)/sqrt(2) with bit-identical amplitudes, so that the
        // real part of the overlap with phase_state cancels exactly;
        // sin(pi/4) and cos(pi/4) differ by one ulp.
        const double amp = 1.0 / std::sqrt(2.0);
        return {amp, amp};
    }
    return linear_state(kQuarterPi + cfg.alpha);
}

PolarizationState post_state(const SchemeConfig& cfg) {
    if (cfg.kind == SchemeKind::A) {
        return linear_state(-kQuarterPi);
    }
    return phase_state(cfg.beta);
}

WeakValueResult weak_value(const PolarizationState& pre,
                           const PolarizationState& post,
                           const Observable& obs, double eps_div) {
    const Complex overlap = inner(post, pre);
    if (std::abs(overlap) < eps_div) {
        throw OrthogonalPostselection(
            "weak value diverges: |<post|pre>| below divergence guard");
    }
    const Complex numerator = inner(post, apply(obs, pre));
    return make_result(numerator / overlap, std::norm(overlap));
}

WeakValueResult closed_form(const SchemeConfig& cfg) {
    switch (cfg.kind) {
        case SchemeKind::A: {
            const double s = std::sin(cfg.alpha);
            if (std::abs(s) < kEpsDivergence) {
                throw OrthogonalPostselection(
                    "scheme A diverges at alpha = 0");
            }
            return make_result(std::cos(cfg.alpha) / s, s * s);
        }
        case SchemeKind::B: {
            const double s = std::sin(cfg.beta);
            if (std::abs(s) < kEpsDivergence) {
                throw OrthogonalPostselection("scheme B diverges at beta = 0");
            }
            return make_result({0.0, -std::cos(cfg.beta) / s}, s * s);
        }
        case SchemeKind::C:
        default: {
            const double sa = std::sin(cfg.alpha);
            const double ca = std::cos(cfg.alpha);
            const double sb = std::sin(cfg.beta);
            const double cb = std::cos(cfg.beta);
            // prob = |den|^2; this product form has no cancellation near
            // alpha, beta -> 0, unlike (1 - cos 2a cos 2b)/2.
            const double prob = sa * sa * cb * cb + ca * ca * sb * sb;
            if (prob < kEpsDivergence * kEpsDivergence) {
                throw OrthogonalPostselection(
                    "scheme C diverges at alpha = beta = 0");
            }
            const Complex num{ca * cb, sa * sb};
            const Complex den{sa * cb, ca * sb};
            return make_result(num / den, prob);
        }
    }
}

double postselection_probability(const PolarizationState& pre,
                                 const PolarizationState& post) {
    return std::clamp(std::norm(inner(post, pre)), 0.0, 1.0);
}

}  // namespace wva
