#pragma once

#include <cstddef>
#include <vector>

#include "wva/weak_value.hpp"

namespace wva {

/// Gaussian probe. `w` is the momentum-space standard deviation, so
/// Var(p) = w^2 and the position-space standard deviation is 1/(2w).
/// `tau` is the coupling strength (time delay); a negative value means a
/// reversed displacement and is accepted so that parity properties can be
/// exercised directly.
struct GaussianPointer {
    GaussianPointer(double w, double tau);

    double w;
    double tau;
};

/// First-order pointer response. weakness = |tau|*|A_w| is the expansion
/// parameter; the first-order formulas assume it is small.
struct PointerShift {
    double dq;
    double dp;
    double weakness;
    bool weak_regime_exceeded;
};

inline constexpr double kWeaknessWarnThreshold = 0.1;

/// Uniform quadrature grid sizing for the exact evolution. The position
/// grid spans [-L, L] with L = 10/(2w) + 10|tau|; the momentum grid spans
/// [-10w, 10w]. Integration is the trapezoidal rule with a fixed
/// left-to-right summation order.
struct QuadratureSpec {
    std::size_t points = std::size_t{1} << 14;
};

/// Exact post-selected pointer means and post-selection probability,
/// all orders in tau.
struct ExactShift {
    double dq;
    double dp;
    double prob;
};

/// One row of a first-order-vs-exact comparison at a given tau.
struct ConvergenceRow {
    double tau;
    double dq_exact;
    double dq_first;
    double dp_exact;
    double dp_first;
    double weakness;
    bool ok;

    double dq_residual() const { return dq_exact - dq_first; }
    double dp_residual() const { return dp_exact - dp_first; }
};

/// dq = tau Re[A_w], dp = 2 tau w^2 Im[A_w]. Sets weak_regime_exceeded
/// when |tau||A_w| > warn_threshold.
PointerShift first_order_shifts(const WeakValueResult& wv,
                                const GaussianPointer& ptr,
                                double warn_threshold = kWeaknessWarnThreshold);

/// Exact evolution of the post-selected Gaussian pointer, by quadrature.
///
/// The observable has eigenvectors |H>, |V> with eigenvalues +-1, so the
/// post-selected position wavefunction is
///   phi(q) = c+ G(q - tau) + c- G(q + tau),
/// with c+ = conj(post_h) pre_h, c- = conj(post_v) pre_v and G the initial
/// Gaussian. dq is <q> over |phi|^2; dp is <p> over |phi~|^2 with
/// phi~(p) = (c+ e^{-ip tau} + c- e^{ip tau}) G~(p) evaluated analytically
/// on its own grid; prob = integral of |phi|^2.
///
/// Throws ResolutionError when the grid fails to hold the Gaussian mass to
/// 1e-9 (or cannot resolve the e^{+-ip tau} oscillation), and
/// OrthogonalPostselection when both branch amplitudes vanish.
ExactShift evolve_exact(const SchemeConfig& cfg, const GaussianPointer& ptr,
                        const QuadratureSpec& grid = {});

/// Exact-vs-first-order table over a list of tau values, quantifying the
/// truncation remainder of the weak-coupling expansion. In the weakness
/// regime the residuals shrink at least quadratically in tau.
std::vector<ConvergenceRow> convergence_study(const SchemeConfig& cfg,
                                              double w,
                                              const std::vector<double>& taus,
                                              const QuadratureSpec& grid = {});

}  // namespace wva
