#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/fft.hpp"
#include "biphoton/core/field.hpp"
#include "biphoton/core/grid.hpp"
#include "biphoton/model/crystal.hpp"
#include "biphoton/model/pump.hpp"
#include "biphoton/model/spatial.hpp"

namespace biphoton {

struct Window1D {
    double center = 0.0;
    double fwhm = 0.0;  // intensity FWHM of the Gaussian window

    void validate(const char* what) const {
        if (!(fwhm > 0.0)) throw ConfigError(std::string(what) + ": window width must be > 0");
    }

    /// Amplitude factor (so that the windowed intensity has the given FWHM).
    double amplitude(double v) const {
        double d = v - center;
        return std::exp(-std::log(2.0) * d * d / (fwhm * fwhm));
    }
};

/// Conditioning applied to the pair: the spatial detection points of both
/// photons (which fix dq for the phase-matching factor) and optional idler
/// spectral/temporal windows for Fig.5-style slicing.
struct PostSelection {
    bool points_are_momentum = false;  // if true, points below are q in rad/mm
    Point2 signal_point;               // mm (or rad/mm)
    Point2 idler_point;                // mm (or rad/mm)
    double focal_length_mm = 200.0;    // far-field mapping q = k x / f
    std::optional<Window1D> idler_spectral_window;  // on nu_i, rad/fs
    std::optional<Window1D> idler_temporal_window;  // on t_i, fs

    void validate() const {
        if (!(focal_length_mm > 0.0)) throw ConfigError("post_selection: focal length must be > 0");
        if (idler_spectral_window) idler_spectral_window->validate("idler spectral window");
        if (idler_temporal_window) idler_temporal_window->validate("idler temporal window");
    }

    /// |q_s - q_i| for the phase-matching factor.
    double delta_q(double signal_wavelength_nm, double idler_wavelength_nm) const {
        double qsx, qsy, qix, qiy;
        if (points_are_momentum) {
            qsx = signal_point.x, qsy = signal_point.y;
            qix = idler_point.x, qiy = idler_point.y;
        } else {
            double ks = units::wavenumber_rad_mm_from_wavelength_nm(signal_wavelength_nm) /
                        focal_length_mm;
            double ki = units::wavenumber_rad_mm_from_wavelength_nm(idler_wavelength_nm) /
                        focal_length_mm;
            qsx = ks * signal_point.x, qsy = ks * signal_point.y;
            qix = ki * idler_point.x, qiy = ki * idler_point.y;
        }
        return std::hypot(qsx - qix, qsy - qiy);
    }
};

/// The central object: complex amplitude psi(nu_s, nu_i) conditioned on one
/// spatial post-selection pair, unit L2 norm.
struct JointSpectralField {
    ComplexField2D psi;  // axis_a = nu_s, axis_b = nu_i
    PostSelection post;
    double delta_q = 0.0;  // rad/mm, as used in the phase-matching factor

    const FrequencyGrid signal_grid() const {
        return FrequencyGrid{psi.axis_a.center, psi.axis_a.n, psi.axis_a.spacing};
    }
    const FrequencyGrid idler_grid() const {
        return FrequencyGrid{psi.axis_b.center, psi.axis_b.n, psi.axis_b.spacing};
    }
};

namespace detail {

inline void normalize_l2(ComplexField2D& f) {
    double n = f.norm();
    if (n == 0.0) throw PreconditionError("normalize: field is identically zero");
    double inv = 1.0 / n;
    for (auto& v : f.values) v *= inv;
}

inline void check_truncation(const ComplexField2D& f, const char* who) {
    double edge = relative_edge_magnitude(f);
    if (edge > 1e-6)
        throw PreconditionError(std::string(who) + ": |psi| at the grid edge is " +
                                std::to_string(edge) +
                                " of the peak (> 1e-6); widen or recenter the grids");
}

}  // namespace detail

/// psi(nu_s, nu_i) = N * Phi(dq, nu_s - nu_i) * E_pump(nu_s + nu_i), per-pair
/// dq fixed by the post-selected spatial points. The pump amplitude is
/// evaluated analytically (no pump grid is involved).
inline JointSpectralField build_jsa(const PumpSpec& pump, const CrystalSpec& crystal,
                                    const FrequencyGrid& signal, const FrequencyGrid& idler,
                                    const PostSelection& post) {
    pump.validate();
    crystal.validate();
    signal.validate();
    idler.validate();
    post.validate();

    double lambda_s = units::wavelength_nm_from_angular_frequency(signal.center_angular_frequency);
    double lambda_i = units::wavelength_nm_from_angular_frequency(idler.center_angular_frequency);
    double dq = post.delta_q(lambda_s, lambda_i);

    JointSpectralField out;
    out.post = post;
    out.delta_q = dq;
    out.psi = ComplexField2D(signal.axis(), idler.axis());
    for (int i = 0; i < signal.n_points; ++i) {
        double nus = signal.value(i);
        for (int j = 0; j < idler.n_points; ++j) {
            double nui = idler.value(j);
            out.psi.at(i, j) = phase_matching(crystal, dq, nus - nui) * pump.amplitude(nus + nui);
        }
    }

    if (post.idler_spectral_window) {
        for (int i = 0; i < signal.n_points; ++i)
            for (int j = 0; j < idler.n_points; ++j)
                out.psi.at(i, j) *= post.idler_spectral_window->amplitude(idler.value(j));
    }
    if (post.idler_temporal_window) {
        ComplexField2D t = fft1_along_axis(out.psi, 1, FftDirection::forward);
        for (int i = 0; i < signal.n_points; ++i)
            for (int j = 0; j < idler.n_points; ++j)
                t.at(i, j) *= post.idler_temporal_window->amplitude(t.axis_b.value(j));
        out.psi = fft1_along_axis(t, 1, FftDirection::inverse);
        out.psi.axis_a = signal.axis();
        out.psi.axis_b = idler.axis();
    }

    detail::normalize_l2(out.psi);
    detail::check_truncation(out.psi, "build_jsa");
    return out;
}

/// Separable dispersion accumulated after generation:
/// psi *= exp(i c2_signal nu_s^2) exp(i c2_idler nu_i^2).
inline JointSpectralField apply_local_dispersion(const JointSpectralField& field, double c2_signal,
                                                 double c2_idler) {
    if (!std::isfinite(c2_signal) || !std::isfinite(c2_idler))
        throw ContractError("apply_local_dispersion: coefficients must be finite");
    JointSpectralField out = field;
    for (int i = 0; i < out.psi.na(); ++i) {
        double nus = out.psi.axis_a.value(i);
        for (int j = 0; j < out.psi.nb(); ++j) {
            double nui = out.psi.axis_b.value(j);
            out.psi.at(i, j) *= std::polar(1.0, c2_signal * nus * nus + c2_idler * nui * nui);
        }
    }
    return out;
}

/// Default grids centered on the paper's signal/idler wavelengths.
inline FrequencyGrid default_signal_grid(int n = 256, double spacing = 2.5e-4) {
    return FrequencyGrid{units::angular_frequency_from_wavelength_nm(1548.0), n, spacing};
}
inline FrequencyGrid default_idler_grid(int n = 256, double spacing = 2.5e-4) {
    return FrequencyGrid{units::angular_frequency_from_wavelength_nm(1544.0), n, spacing};
}

}  // namespace biphoton
