#pragma once

#include <complex>

#include "wva/errors.hpp"

namespace wva {

using Complex = std::complex<double>;

/// Unnormalized amplitude pair over the {H, V} polarization basis.
/// Produced by operator application; not a physical state by itself.
struct Amplitudes {
    Complex h;
    Complex v;
};

/// Normalized two-level state a|H> + b|V>.
///
/// Construction normalizes the input amplitudes and rejects zero or
/// non-finite vectors. Instances are immutable values; global phase is
/// kept as given (state equality is only meaningful up to phase).
class PolarizationState {
public:
    PolarizationState(Complex amp_h, Complex amp_v);

    Complex amp_h() const { return h_; }
    Complex amp_v() const { return v_; }

private:
    Complex h_;
    Complex v_;
};

/// 2x2 Hermitian observable over {H, V}. Hermiticity is checked at
/// construction within 1e-12.
class Observable {
public:
    Observable(Complex m_hh, Complex m_hv, Complex m_vh, Complex m_vv);

    Complex at(int row, int col) const { return m_[2 * row + col]; }

private:
    Complex m_[4];
};

/// The canonical polarization observable |H><H| - |V><V|.
const Observable& pauli_hv();

/// sin(theta)|H> + cos(theta)|V>, the state behind a linear polarizer.
PolarizationState linear_state(double theta);

/// (1/sqrt(2)) (exp(-i beta)|H> - exp(i beta)|V>), the state selected by a
/// quarter-wave plate followed by a polarizer at angle beta to its axes.
PolarizationState phase_state(double beta);

/// <bra|ket> with the first argument conjugated.
Complex inner(const PolarizationState& bra, const PolarizationState& ket);
Complex inner(const PolarizationState& bra, const Amplitudes& ket);

/// Matrix action obs|s>; the result is in general unnormalized.
Amplitudes apply(const Observable& obs, const PolarizationState& s);

}  // namespace wva
