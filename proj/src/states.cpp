#include "wva/states.hpp"

#include <cmath>

namespace wva {

namespace {

constexpr double kZeroNormFloor = 1e-15;
constexpr double kHermitianTol = 1e-12;

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

PolarizationState::PolarizationState(Complex amp_h, Complex amp_v) {
    if (!finite(amp_h) || !finite(amp_v)) {
        throw InvalidArgument("state amplitudes must be finite");
    }
    const double norm = std::sqrt(std::norm(amp_h) + std::norm(amp_v));
    if (norm < kZeroNormFloor) {
        throw InvalidArgument("state amplitudes must not be the zero vector");
    }
    h_ = amp_h / norm;
    v_ = amp_v / norm;
}

Observable::Observable(Complex m_hh, Complex m_hv, Complex m_vh, Complex m_vv) {
    if (!finite(m_hh) || !finite(m_hv) || !finite(m_vh) || !finite(m_vv)) {
        throw InvalidArgument("observable entries must be finite");
    }
    if (std::abs(m_hh.imag()) > kHermitianTol ||
        std::abs(m_vv.imag()) > kHermitianTol ||
        std::abs(m_hv - std::conj(m_vh)) > kHermitianTol) {
        throw InvalidArgument("observable must be Hermitian");
    }
    m_[0] = m_hh;
    m_[1] = m_hv;
    m_[2] = m_vh;
    m_[3] = m_vv;
}

const Observable& pauli_hv() {
    static const Observable obs(1.0, 0.0, 0.0, -1.0);
    return obs;
}

PolarizationState linear_state(double theta) {
    if (!std::isfinite(theta)) {
        throw InvalidArgument("linear_state: theta must be finite");
    }
    return {std::sin(theta), std::cos(theta)};
}

PolarizationState phase_state(double beta) {
    if (!std::isfinite(beta)) {
        throw InvalidArgument("phase_state: beta must be finite");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex eb{std::cos(beta), std::sin(beta)};
    return {std::conj(eb) * inv_sqrt2, -eb * inv_sqrt2};
}

Complex inner(const PolarizationState& bra, const PolarizationState& ket) {
    return std::conj(bra.amp_h()) * ket.amp_h() +
           std::conj(bra.amp_v()) * ket.amp_v();
}

Complex inner(const PolarizationState& bra, const Amplitudes& ket) {
    return std::conj(bra.amp_h()) * ket.h + std::conj(bra.amp_v()) * ket.v;
}

Amplitudes apply(const Observable& obs, const PolarizationState& s) {
    return {obs.at(0, 0) * s.amp_h() + obs.at(0, 1) * s.amp_v(),
            obs.at(1, 0) * s.amp_h() + obs.at(1, 1) * s.amp_v()};
}

}  // namespace wva
