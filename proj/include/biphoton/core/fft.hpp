#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/field.hpp"
#include "biphoton/core/units.hpp"

// Fourier convention (fixed here, cited by the retrieval module):
//
//   forward:  F(T) = d_nu/sqrt(2 pi) * sum_k f(nu_k) exp(-i nu_k T)
//   inverse:  f(nu) = d_T /sqrt(2 pi) * sum_m F(T_m) exp(+i T_m nu)
//
// Both domains are origin-centered. The continuum scaling makes the
// cell-area-weighted Parseval sum exact and inverse(forward(f)) == f.
// Under this convention the time-domain picture of a spectrum is its
// *forward* transform: a spectral phase exp(+i c1 nu) moves the pulse to
// t = +c1, and the SSI delay fringe exp(+i nu tau) shows up at T = +tau.

namespace biphoton {

enum class FftDirection { forward, inverse };

namespace detail {

/// In-place iterative radix-2 DFT, kernel exp(-2 pi i k m / n) for forward.
inline void fft_pow2(complexd* x, int n, bool inverse) {
    // bit reversal
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        double ang = units::two_pi / len * (inverse ? 1.0 : -1.0);
        const complexd wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            complexd w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                complexd u = x[i + k];
                complexd v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

/// Centered transform of one line: both index origins at n/2. For n a
/// multiple of 4 the centered DFT equals (-1)^m DFT[(-1)^k x_k] exactly.
inline void centered_line(complexd* x, int n, bool inverse, double scale) {
    for (int k = 1; k < n; k += 2) x[k] = -x[k];
    fft_pow2(x, n, inverse);
    for (int m = 1; m < n; m += 2) x[m] = -x[m];
    for (int m = 0; m < n; ++m) x[m] *= scale;
}

}  // namespace detail

/// 1D centered Fourier transform along one axis of the field (axis 0 = a,
/// axis 1 = b), applied line by line. The transformed axis is replaced by its
/// conjugate.
inline ComplexField2D fft1_along_axis(const ComplexField2D& field, int axis,
                                      FftDirection dir) {
    if (axis != 0 && axis != 1) throw ContractError("fft1_along_axis: axis must be 0 or 1");
    const Axis& ax = (axis == 0) ? field.axis_a : field.axis_b;
    if (!is_power_of_two(ax.n) || ax.n < 4)
        throw ContractError("fft1_along_axis: axis length must be a power of two >= 4, got " +
                            std::to_string(ax.n));

    const bool inverse = (dir == FftDirection::inverse);
    // d_axis / sqrt(2 pi); the conjugate axis' spacing plays that role on the
    // way back, so forward-then-inverse is the identity.
    const double scale = ax.spacing / std::sqrt(units::two_pi);

    ComplexField2D out = field;
    ((axis == 0) ? out.axis_a : out.axis_b) = ax.conjugate();

    std::vector<complexd> line(ax.n);
    if (axis == 1) {
        for (int i = 0; i < field.na(); ++i) {
            complexd* row = &out.values[static_cast<size_t>(i) * field.nb()];
            detail::centered_line(row, ax.n, inverse, scale);
        }
    } else {
        for (int j = 0; j < field.nb(); ++j) {
            for (int i = 0; i < field.na(); ++i) line[i] = out.at(i, j);
            detail::centered_line(line.data(), ax.n, inverse, scale);
            for (int i = 0; i < field.na(); ++i) out.at(i, j) = line[i];
        }
    }
    return out;
}

/// 2D centered transform (both axes).
inline ComplexField2D fft2_centered(const ComplexField2D& field, FftDirection dir) {
    if (field.axis_a.n != field.na() || field.axis_b.n != field.nb() ||
        field.values.size() != static_cast<size_t>(field.na()) * field.nb())
        throw ContractError("fft2_centered: field dimensions do not match axes");
    return fft1_along_axis(fft1_along_axis(field, 0, dir), 1, dir);
}

/// Evaluate the field at coordinates shifted by `shift` along one axis,
/// i.e. out(nu) = f(nu + shift), via the Fourier shift theorem. Exact for
/// band-limited fields; content leaving the window wraps around, which the
/// edge-energy precondition keeps below numerical relevance.
inline ComplexField2D resample_shift(const ComplexField2D& field, int axis, double shift,
                                     double edge_tolerance = 1e-6) {
    if (axis != 0 && axis != 1) throw ContractError("resample_shift: axis must be 0 or 1");
    const Axis ax = (axis == 0) ? field.axis_a : field.axis_b;
    if (std::abs(shift) >= 0.25 * ax.span())
        throw PreconditionError("resample_shift: |shift| must be < 1/4 of the axis span");
    if (shift == 0.0) return field;

    double edge = relative_edge_magnitude_along(field, axis);
    if (edge > edge_tolerance)
        throw PreconditionError(
            "resample_shift: edge energy " + std::to_string(edge) +
            " of peak exceeds " + std::to_string(edge_tolerance) + "; shift would alias");

    ComplexField2D spec = fft1_along_axis(field, axis, FftDirection::forward);
    const Axis conj = (axis == 0) ? spec.axis_a : spec.axis_b;
    // f(nu + s) <-> exp(+i s T) F(T) under the forward kernel exp(-i nu T)
    if (axis == 0) {
        for (int i = 0; i < spec.na(); ++i) {
            complexd ph = std::polar(1.0, shift * conj.value(i));
            for (int j = 0; j < spec.nb(); ++j) spec.at(i, j) *= ph;
        }
    } else {
        std::vector<complexd> ph(spec.nb());
        for (int j = 0; j < spec.nb(); ++j) ph[j] = std::polar(1.0, shift * conj.value(j));
        for (int i = 0; i < spec.na(); ++i)
            for (int j = 0; j < spec.nb(); ++j) spec.at(i, j) *= ph[j];
    }
    ComplexField2D out = fft1_along_axis(spec, axis, FftDirection::inverse);
    out.axis_a = field.axis_a;  // restore absolute-center metadata
    out.axis_b = field.axis_b;
    return out;
}

}  // namespace biphoton
