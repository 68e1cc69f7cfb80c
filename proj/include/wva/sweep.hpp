#pragma once

#include <cstddef>
#include <vector>

#include "wva/weak_value.hpp"

namespace wva {

enum class GridSpacing { Linear, Log };

/// One-dimensional angle grid, ascending. Log spacing requires start > 0.
struct AngleGrid {
    double start;
    double stop;
    std::size_t count;
    GridSpacing spacing = GridSpacing::Linear;

    std::vector<double> points() const;
};

/// Log grid over the decades where the weak-value structure lives.
AngleGrid default_angle_grid();

/// default_angle_grid() merged with a linear refinement around `focus`,
/// sorted ascending; used when locating peaks near a known deflection.
std::vector<double> refined_angle_points(double focus);

/// One evaluated scheme configuration. On a divergent grid point the
/// numeric fields are NaN and ok is false.
struct SweepRow {
    double alpha;
    double beta;
    double re_aw;
    double im_aw;
    double ab_aw;
    double prob;
    bool ok;
};

/// Which scheme angle is held fixed during a sweep. Kinds A and B sweep
/// their single angle (None); kind C fixes one angle and sweeps the other.
enum class FixedAxis { None, Alpha, Beta };

/// Evaluate closed_form over the grid, one row per point, ordered by the
/// swept angle.
std::vector<SweepRow> sweep(SchemeKind kind, FixedAxis fixed,
                            double fixed_angle, const AngleGrid& grid);
std::vector<SweepRow> sweep(SchemeKind kind, FixedAxis fixed,
                            double fixed_angle,
                            const std::vector<double>& points);

/// Argmax over alpha of Re[A_w,C](alpha, beta_fixed): grid bracketing then
/// golden-section refinement. The stationarity condition cos(2a) = cos(2b)
/// puts the true peak at alpha = beta_fixed; a search range that leaves the
/// argmax on its boundary raises RangeError.
double find_sensitivity_peak(double beta_fixed, const AngleGrid& search);
double find_sensitivity_peak(double beta_fixed,
                             const std::vector<double>& points);

struct Interval {
    double lo;
    double hi;
};

/// Joint behavior of sensitivity and post-selection probability for kind C
/// at fixed beta. P grows with alpha everywhere; Re[A_w] grows only up to
/// alpha_peak. Below the peak both fall together as alpha shrinks — the
/// anomalous regime for a plural weak value.
struct AnomalyReport {
    double beta_fixed;
    double alpha_peak;
    Interval anomalous;  // (0, grid boundary at the Re argmax)
    Interval normal;     // (that boundary, grid end)
};

/// Classify the grid by the finite-difference signs of Re[A_w] and P.
/// Requires the grid to span both sides of beta_fixed with at least three
/// points per side.
AnomalyReport anomaly_report(double beta_fixed, const AngleGrid& grid);
AnomalyReport anomaly_report(double beta_fixed,
                             const std::vector<double>& points);

}  // namespace wva
