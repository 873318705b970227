#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/field.hpp"
#include "biphoton/core/grid.hpp"
#include "biphoton/core/units.hpp"

namespace biphoton {

enum class WavefrontModel { flat, quadratic };

/// Joint spatial amplitude of the photon pair in the detection (far-field)
/// plane: a double Gaussian, narrow on the momentum sum q_s + q_i (set by the
/// collimated pump, width 1/waist) and wide on the difference q_s - q_i (set
/// by phase matching). sigma_sum < sigma_diff is the anti-correlation regime.
/// Detected positions map to transverse momenta via q = k x / f with a
/// configurable effective focal length (declared config; the paper does not
/// state its imaging system).
struct JointSpatialSpec {
    // Declared config (the paper states neither width). The defaults give a
    // conditional signal spot of ~0.5 mm rms and a centroid ratio of -0.8 on
    // the 7x7 raster, comparable to the plotted distributions.
    double sigma_sum = 10.0;   // rad/mm on q_s + q_i  (pump-waist limited)
    double sigma_diff = 30.0;  // rad/mm on q_s - q_i  (phase-matching limited)
    WavefrontModel wavefront = WavefrontModel::flat;
    double wavefront_coefficient = 0.0;  // rad/mm^2, quadratic model
    double focal_length_mm = 200.0;
    double signal_wavelength_nm = 1548.0;
    double idler_wavelength_nm = 1544.0;

    void validate() const {
        if (!(sigma_sum > 0.0) || !(sigma_diff > 0.0))
            throw ConfigError("spatial: widths must be > 0");
        if (!(sigma_sum < sigma_diff))
            throw ConfigError("spatial: sigma_sum must be < sigma_diff (anti-correlation regime)");
        if (!(focal_length_mm > 0.0)) throw ConfigError("spatial: focal length must be > 0");
    }

    double signal_q_per_mm() const {
        return units::wavenumber_rad_mm_from_wavelength_nm(signal_wavelength_nm) / focal_length_mm;
    }
    double idler_q_per_mm() const {
        return units::wavenumber_rad_mm_from_wavelength_nm(idler_wavelength_nm) / focal_length_mm;
    }

    double wavefront_phase(double x, double y) const {
        return wavefront == WavefrontModel::quadratic ? wavefront_coefficient * (x * x + y * y)
                                                      : 0.0;
    }
};

struct Point2 {
    double x = 0.0, y = 0.0;
};

namespace detail {

/// One transverse component of the double Gaussian (amplitude convention:
/// exp(-S^2/(4 a^2) - D^2/(4 b^2)) with S = q_s + q_i, D = q_s - q_i).
inline double pair_gauss_1d(const JointSpatialSpec& s, double qs, double qi) {
    double sum = qs + qi, diff = qs - qi;
    return std::exp(-sum * sum / (4.0 * s.sigma_sum * s.sigma_sum) -
                    diff * diff / (4.0 * s.sigma_diff * s.sigma_diff));
}

}  // namespace detail

/// Full joint amplitude A(x_s, y_s, x_i, y_i) on the two rasters, stored as
/// [i_sx][i_sy][i_ix][i_iy] row-major.
struct JointSpatialAmplitude {
    SpatialGrid signal_grid;
    SpatialGrid idler_grid;
    std::vector<complexd> values;

    const complexd& at(int isx, int isy, int iix, int iiy) const {
        return values[((static_cast<size_t>(isx) * signal_grid.n_y + isy) * idler_grid.n_x + iix) *
                          idler_grid.n_y +
                      iiy];
    }
    complexd& at(int isx, int isy, int iix, int iiy) {
        return const_cast<complexd&>(static_cast<const JointSpatialAmplitude*>(this)->at(
            isx, isy, iix, iiy));
    }
};

inline JointSpatialAmplitude joint_spatial_amplitude(const JointSpatialSpec& spec,
                                                     const SpatialGrid& signal,
                                                     const SpatialGrid& idler) {
    spec.validate();
    signal.validate();
    idler.validate();
    JointSpatialAmplitude out;
    out.signal_grid = signal;
    out.idler_grid = idler;
    out.values.resize(static_cast<size_t>(signal.n_x) * signal.n_y * idler.n_x * idler.n_y);
    const double ks = spec.signal_q_per_mm(), ki = spec.idler_q_per_mm();
    size_t n = 0;
    for (int isx = 0; isx < signal.n_x; ++isx)
        for (int isy = 0; isy < signal.n_y; ++isy)
            for (int iix = 0; iix < idler.n_x; ++iix)
                for (int iiy = 0; iiy < idler.n_y; ++iiy) {
                    double xs = signal.x(isx), ys = signal.y(isy);
                    double mag = detail::pair_gauss_1d(spec, ks * xs, ki * idler.x(iix)) *
                                 detail::pair_gauss_1d(spec, ks * ys, ki * idler.y(iiy));
                    out.values[n++] = std::polar(mag, spec.wavefront_phase(xs, ys));
                }
    return out;
}

/// Signal-photon amplitude over (x_s, y_s) conditioned on an idler detected
/// at `idler_point` (continuous coordinates, not snapped to the raster).
inline ComplexField2D conditional_signal_amplitude(const JointSpatialSpec& spec,
                                                   const SpatialGrid& signal,
                                                   Point2 idler_point) {
    spec.validate();
    signal.validate();
    ComplexField2D out(signal.axis_x(), signal.axis_y());
    const double ks = spec.signal_q_per_mm(), ki = spec.idler_q_per_mm();
    for (int i = 0; i < signal.n_x; ++i)
        for (int j = 0; j < signal.n_y; ++j) {
            double xs = signal.x(i), ys = signal.y(j);
            double mag = detail::pair_gauss_1d(spec, ks * xs, ki * idler_point.x) *
                         detail::pair_gauss_1d(spec, ks * ys, ki * idler_point.y);
            out.at(i, j) = std::polar(mag, spec.wavefront_phase(xs, ys));
        }
    return out;
}

/// Closed-form conditional centroid of the signal intensity given the idler
/// detection point: componentwise (sigma_sum^2 - sigma_diff^2)/(sigma_sum^2 +
/// sigma_diff^2) * (k_i/k_s) * idler coordinate. Negative for sigma_sum <
/// sigma_diff (anti-correlation).
inline Point2 conditional_centroid_closed_form(const JointSpatialSpec& spec, Point2 idler_point) {
    double a2 = spec.sigma_sum * spec.sigma_sum, b2 = spec.sigma_diff * spec.sigma_diff;
    double factor = (a2 - b2) / (a2 + b2) * spec.idler_q_per_mm() / spec.signal_q_per_mm();
    return {factor * idler_point.x, factor * idler_point.y};
}

}  // namespace biphoton
