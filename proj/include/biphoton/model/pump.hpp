#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/field.hpp"
#include "biphoton/core/grid.hpp"
#include "biphoton/core/units.hpp"

namespace biphoton {

/// Pump pulse: Gaussian spectral magnitude plus a polynomial spectral phase
/// c0 + c1 nu + c2 nu^2 + c3 nu^3 in the relative pump frequency. The GDD
/// reported everywhere downstream is phi'' = 2 c2.
struct PumpSpec {
    double center_wavelength_nm = 773.0;
    double bandwidth_fwhm_nm = 5.1;  // FWHM of the spectral *magnitude*
    double c0 = 0.0;                 // rad
    double c1 = 0.0;                 // fs
    double c2 = 0.0;                 // fs^2
    double c3 = 0.0;                 // fs^3
    double waist_mm = 2.5;

    void validate() const {
        if (!(center_wavelength_nm > 0.0)) throw ConfigError("pump: center wavelength must be > 0");
        if (!(bandwidth_fwhm_nm > 0.0)) throw ConfigError("pump: bandwidth must be > 0");
        if (!(waist_mm > 0.0)) throw ConfigError("pump: waist must be > 0");
        for (double c : {c0, c1, c2, c3})
            if (!std::isfinite(c)) throw ConfigError("pump: phase coefficients must be finite");
    }

    double center_angular_frequency() const {
        return units::angular_frequency_from_wavelength_nm(center_wavelength_nm);
    }

    double bandwidth_fwhm_rad_fs() const {
        return units::bandwidth_rad_fs_from_nm(bandwidth_fwhm_nm, center_wavelength_nm);
    }

    /// Intensity-std sigma of the magnitude Gaussian exp(-nu^2/(4 sigma^2)).
    /// Magnitude FWHM = 4 sigma sqrt(ln 2).
    double magnitude_sigma() const {
        return bandwidth_fwhm_rad_fs() / (4.0 * std::sqrt(std::log(2.0)));
    }

    double phase(double nu) const { return c0 + nu * (c1 + nu * (c2 + nu * c3)); }

    double gdd() const { return 2.0 * c2; }
    double tod() const { return 6.0 * c3; }

    /// Unnormalized complex spectral amplitude at relative frequency nu.
    complexd amplitude(double nu) const {
        double s = magnitude_sigma();
        return std::polar(std::exp(-nu * nu / (4.0 * s * s)), phase(nu));
    }
};

/// Sampled, L2-normalized pump envelope on a frequency grid.
inline std::vector<complexd> pump_envelope(const PumpSpec& spec, const FrequencyGrid& grid) {
    spec.validate();
    grid.validate();
    double fwhm = spec.bandwidth_fwhm_rad_fs();
    if (grid.span() < 4.0 * fwhm)
        throw PreconditionError("pump_envelope: grid span " + std::to_string(grid.span()) +
                                " rad/fs is below 4x the pump bandwidth " + std::to_string(fwhm));
    std::vector<complexd> env(grid.n_points);
    double power = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        env[i] = spec.amplitude(grid.value(i));
        power += std::norm(env[i]);
    }
    double inv = 1.0 / std::sqrt(power * grid.spacing);
    for (auto& e : env) e *= inv;
    return env;
}

}  // namespace biphoton
