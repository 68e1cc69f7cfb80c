#include "wva/pointer.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wva {

namespace {

constexpr double kMassTol = 1e-9;
constexpr double kAmplitudeFloor = 1e-15;

// Trapezoidal rule on a uniform grid, summed left to right so repeated
// runs reduce in a fixed order.
double trapezoid(const std::vector<double>& values, double step) {
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        sum += values[i];
    }
    return sum * step;
}

struct UniformGrid {
    double lo;
    double step;
    std::size_t count;

    double at(std::size_t i) const {
        return lo + static_cast<double>(i) * step;
    }
};

UniformGrid make_grid(double half_width, std::size_t points) {
    if (points < 2) {
        throw InvalidArgument("quadrature grid needs at least 2 points");
    }
    const double step = 2.0 * half_width / static_cast<double>(points - 1);
    return {-half_width, step, points};
}

// Squared normalized Gaussian wavefunction = N(center, sigma^2) density.
double gaussian_density(double x, double center, double sigma) {
    const double z = (x - center) / sigma;
    return std::exp(-0.5 * z * z) /
           (sigma * std::sqrt(2.0 * std::numbers::pi));
}

void check_mass(const UniformGrid& grid, double center, double sigma,
                const char* which) {
    std::vector<double> dens(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        dens[i] = gaussian_density(grid.at(i), center, sigma);
    }
    if (std::abs(trapezoid(dens, grid.step) - 1.0) > kMassTol) {
        throw ResolutionError(std::string(which) +
                              " grid does not hold the Gaussian mass to 1e-9");
    }
}

}  // namespace

GaussianPointer::GaussianPointer(double w_, double tau_) : w(w_), tau(tau_) {
    if (!std::isfinite(w) || w <= 0.0) {
        throw InvalidArgument("pointer width w must be finite and > 0");
    }
    if (!std::isfinite(tau)) {
        throw InvalidArgument("coupling strength tau must be finite");
    }
}

PointerShift first_order_shifts(const WeakValueResult& wv,
                                const GaussianPointer& ptr,
                                double warn_threshold) {
    const double weakness = std::abs(ptr.tau) * wv.ab;
    return {ptr.tau * wv.re, 2.0 * ptr.tau * ptr.w * ptr.w * wv.im, weakness,
            weakness > warn_threshold};
}

ExactShift evolve_exact(const SchemeConfig& cfg, const GaussianPointer& ptr,
                        const QuadratureSpec& grid) {
    const PolarizationState pre = pre_state(cfg);
    const PolarizationState post = post_state(cfg);
    const Complex c_plus = std::conj(post.amp_h()) * pre.amp_h();
    const Complex c_minus = std::conj(post.amp_v()) * pre.amp_v();
    if (std::abs(c_plus) < kAmplitudeFloor &&
        std::abs(c_minus) < kAmplitudeFloor) {
        throw OrthogonalPostselection(
            "both eigenbranch amplitudes vanish; no post-selected pointer");
    }

    const double tau = ptr.tau;
    const double sigma_q = 1.0 / (2.0 * ptr.w);

    // Position space: two displaced Gaussians plus a real cross term.
    const UniformGrid qgrid =
        make_grid(10.0 * sigma_q + 10.0 * std::abs(tau), grid.points);
    check_mass(qgrid, tau, sigma_q, "position");
    check_mass(qgrid, -tau, sigma_q, "position");

    const double wp = std::norm(c_plus);
    const double wm = std::norm(c_minus);
    const double cross = 2.0 * (c_plus * std::conj(c_minus)).real();
    const double norm_q = sigma_q * std::sqrt(2.0 * std::numbers::pi);
    std::vector<double> dens(qgrid.count);
    std::vector<double> q_dens(qgrid.count);
    for (std::size_t i = 0; i < qgrid.count; ++i) {
        const double q = qgrid.at(i);
        const double gp = gaussian_density(q, tau, sigma_q);
        const double gm = gaussian_density(q, -tau, sigma_q);
        // G(q-tau) G(q+tau) is itself a Gaussian centered at 0.
        const double gx =
            std::exp(-0.5 * (q * q + tau * tau) / (sigma_q * sigma_q)) /
            norm_q;
        dens[i] = wp * gp + wm * gm + cross * gx;
        q_dens[i] = q * dens[i];
    }
    const double prob = trapezoid(dens, qgrid.step);
    if (prob < 1e-30) {
        throw OrthogonalPostselection(
            "post-selected pointer has vanishing norm");
    }
    const double dq = trapezoid(q_dens, qgrid.step) / prob;

    // Momentum space: the displacement becomes a phase, so the density is
    // the initial Gaussian modulated by cos/sin of 2 p tau.
    const UniformGrid pgrid = make_grid(10.0 * ptr.w, grid.points);
    if (pgrid.step * std::abs(tau) > std::numbers::pi / 8.0) {
        throw ResolutionError(
            "momentum grid cannot resolve the exp(2 i p tau) oscillation");
    }
    check_mass(pgrid, 0.0, ptr.w, "momentum");

    const double cc_re = (c_plus * std::conj(c_minus)).real();
    const double cc_im = (c_plus * std::conj(c_minus)).imag();
    std::vector<double> pdens(pgrid.count);
    std::vector<double> p_pdens(pgrid.count);
    for (std::size_t i = 0; i < pgrid.count; ++i) {
        const double p = pgrid.at(i);
        const double envelope = gaussian_density(p, 0.0, ptr.w);
        const double mod = wp + wm +
                           2.0 * (cc_re * std::cos(2.0 * p * tau) +
                                  cc_im * std::sin(2.0 * p * tau));
        pdens[i] = mod * envelope;
        p_pdens[i] = p * pdens[i];
    }
    const double pnorm = trapezoid(pdens, pgrid.step);
    if (pnorm < 1e-30) {
        throw OrthogonalPostselection(
            "post-selected pointer has vanishing norm");
    }
    const double dp = trapezoid(p_pdens, pgrid.step) / pnorm;

    return {dq, dp, prob};
}

std::vector<ConvergenceRow> convergence_study(const SchemeConfig& cfg,
                                              double w,
                                              const std::vector<double>& taus,
                                              const QuadratureSpec& grid) {
    if (!std::isfinite(w) || w <= 0.0) {
        throw InvalidArgument("pointer width w must be finite and > 0");
    }
    // Baseline check at tau = 0: a spec that cannot even hold the bare
    // Gaussian fails as a whole, instead of flagging every row.
    const double sigma_q = 1.0 / (2.0 * w);
    check_mass(make_grid(10.0 * sigma_q, grid.points), 0.0, sigma_q,
               "position");
    check_mass(make_grid(10.0 * w, grid.points), 0.0, w, "momentum");

    const WeakValueResult wv = closed_form(cfg);
    std::vector<ConvergenceRow> rows;
    rows.reserve(taus.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double tau : taus) {
        const GaussianPointer ptr(w, tau);
        const PointerShift first = first_order_shifts(wv, ptr);
        try {
            const ExactShift exact = evolve_exact(cfg, ptr, grid);
            rows.push_back({tau, exact.dq, first.dq, exact.dp, first.dp,
                            first.weakness, true});
        } catch (const ResolutionError&) {
            rows.push_back(
                {tau, nan, first.dq, nan, first.dp, first.weakness, false});
        }
    }
    return rows;
}

}  // namespace wva
