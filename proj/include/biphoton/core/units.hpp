#pragma once

#include <cmath>

// Unit system used throughout: time in fs, angular frequency in rad/fs,
// transverse position in mm, transverse momentum in rad/mm, GDD in fs^2,
// TOD in fs^3. Wavelengths (nm) and common-lab frequencies (GHz) appear at
// the I/O boundary only; nothing downstream of these helpers stores them.

namespace biphoton::units {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Speed of light in nm/fs (= 2.99792458e8 m/s).
inline constexpr double c_nm_fs = 299.792458;

/// Absolute angular frequency [rad/fs] of a vacuum wavelength [nm].
inline double angular_frequency_from_wavelength_nm(double lambda_nm) {
    return two_pi * c_nm_fs / lambda_nm;
}

inline double wavelength_nm_from_angular_frequency(double omega_rad_fs) {
    return two_pi * c_nm_fs / omega_rad_fs;
}

/// Width conversion |domega| = 2 pi c / lambda^2 * |dlambda| at a center wavelength.
inline double bandwidth_rad_fs_from_nm(double dlambda_nm, double lambda0_nm) {
    return two_pi * c_nm_fs * dlambda_nm / (lambda0_nm * lambda0_nm);
}

inline double bandwidth_nm_from_rad_fs(double domega, double lambda0_nm) {
    return domega * lambda0_nm * lambda0_nm / (two_pi * c_nm_fs);
}

/// Ordinary frequency in GHz -> angular frequency in rad/fs (1 GHz = 1e-6 cycles/fs).
inline double rad_fs_from_ghz(double f_ghz) {
    return two_pi * f_ghz * 1e-6;
}

/// Vacuum wavenumber [rad/mm] of a wavelength [nm] (1 nm = 1e-6 mm).
inline double wavenumber_rad_mm_from_wavelength_nm(double lambda_nm) {
    return two_pi / (lambda_nm * 1e-6);
}

/// FWHM of a Gaussian <-> its standard deviation.
inline constexpr double fwhm_to_sigma = 0.42466090014400953;  // 1 / (2 sqrt(2 ln 2))
inline double sigma_from_fwhm(double fwhm) { return fwhm * fwhm_to_sigma; }
inline double fwhm_from_sigma(double sigma) { return sigma / fwhm_to_sigma; }

}  // namespace biphoton::units
