#pragma once

#include "wva/states.hpp"

namespace wva {

/// The three pre-/post-selection layouts:
///   A — linear polarizers only; purely real weak value cot(alpha).
///   B — QWP + polarizer post-selection; purely imaginary -i cot(beta).
///   C — scheme B with a deflection alpha on the first polarizer; the weak
///       value acquires both real and imaginary parts ("plural").
enum class SchemeKind { A, B, C };

/// Scheme identity plus the two polarizer angles (radians).
/// alpha is the P1 deflection (zero for kind B); beta is the P2/QWP angle
/// (zero for kind A). Both angles must lie in (-pi/2, pi/2).
struct SchemeConfig {
    SchemeKind kind;
    double alpha;
    double beta;
};

SchemeConfig scheme_a(double alpha);
SchemeConfig scheme_b(double beta);
SchemeConfig scheme_c(double alpha, double beta);

/// A weak value with its decomposition and the post-selection probability.
/// re/im/ab are redundant views of aw; prob = |<post|pre>|^2.
struct WeakValueResult {
    Complex aw;
    double re;
    double im;
    double ab;
    double prob;
};

/// |<post|pre>| below this is treated as orthogonal post-selection:
/// the weak-value ratio is numerically meaningless past double resolution.
inline constexpr double kEpsDivergence = 1e-15;

/// Pre-selected state of the scheme: linear_state(pi/4 + alpha) for kinds
/// A and C, linear_state(pi/4) for kind B.
PolarizationState pre_state(const SchemeConfig& cfg);

/// Post-selected state: linear_state(-pi/4) for kind A, phase_state(beta)
/// for kinds B and C.
PolarizationState post_state(const SchemeConfig& cfg);

/// General definition A_w = <post|obs|pre> / <post|pre>, with
/// prob = |<post|pre>|^2. Throws OrthogonalPostselection when
/// |<post|pre>| < eps_div.
WeakValueResult weak_value(const PolarizationState& pre,
                           const PolarizationState& post,
                           const Observable& obs,
                           double eps_div = kEpsDivergence);

/// Closed-form weak value for a scheme configuration:
///   A: cot(alpha), prob sin^2(alpha)
///   B: -i cot(beta), prob sin^2(beta)
///   C: (cos a cos b + i sin a sin b) / (sin a cos b + i cos a sin b),
///      prob sin^2(a) cos^2(b) + cos^2(a) sin^2(b)
/// The kind-C forms are the cancellation-free equivalents of the direct
/// inner-product expressions and stay accurate as a, b -> 0.
WeakValueResult closed_form(const SchemeConfig& cfg);

/// |<post|pre>|^2, in [0, 1].
double postselection_probability(const PolarizationState& pre,
                                 const PolarizationState& post);

}  // namespace wva
