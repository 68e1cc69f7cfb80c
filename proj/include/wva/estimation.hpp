#pragma once

#include <vector>

#include "wva/weak_value.hpp"

namespace wva {

/// Which measured quantity the angle estimator inverts:
///   ImBased   — |Im[A_w]|, through beta = arctan(1/m)
///   AbBased   — |A_w|,     through beta = arctan(1/m)
///   ProbBased — P,         through beta = arcsin(sqrt(m))
/// All three invert the ideal purely-imaginary model of scheme B, which is
/// exactly why a P1 deflection alpha produces a systematic error.
enum class EstimatorKind { ImBased, AbBased, ProbBased };

/// One estimate of the P2 angle together with its bias.
struct ErrorRecord {
    double beta_true;
    double alpha_deflection;
    EstimatorKind kind;
    double measured;
    double beta_hat;
    double err;  // beta_hat - beta_true
    bool ok;
};

/// Idealized noiseless measurement channel: the scalar handed to the
/// estimator. Im/Ab kinds report magnitudes.
double measure(const SchemeConfig& cfg, EstimatorKind kind);

/// Invert a measured scalar to the P2 angle through the ideal scheme-B
/// model, principal branch in (0, pi/2]. Im/Ab require measured > 0;
/// Prob requires measured in (0, 1].
double estimate_beta(double measured, EstimatorKind kind);

/// Measure scheme C(alpha, beta_true) with `kind`, invert as if the setup
/// were ideal scheme B, and record the resulting bias.
ErrorRecord systematic_error(double beta_true, double alpha_deflection,
                             EstimatorKind kind);

/// Solve |Im[A_w,C](alpha, beta)| = im_target for beta in (0, pi/4).
///
/// |Im| = sin(2b) cos(2a) / (1 - cos(2a) cos(2b)) rises on (0, alpha),
/// peaks at beta = alpha with value cot(2 alpha), then falls. Returns the
/// roots in ascending order: two when the target is below the peak (and
/// above the value at pi/4, where the falling branch leaves the interval),
/// one when it hits the peak, none when it exceeds it. Bisection on each
/// monotone bracket, |f - target| <= 1e-12 relative.
std::vector<double> invert_im_two_branch(double im_target, double alpha);

/// One record per (beta, estimator), ordered by beta ascending then
/// estimator. Points whose measurement or inversion fails are flagged
/// rather than dropped.
std::vector<ErrorRecord> error_curve(std::vector<double> beta_grid,
                                     double alpha_deflection);

}  // namespace wva
