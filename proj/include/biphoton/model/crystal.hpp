#pragma once

#include <cmath>
#include <complex>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/units.hpp"
#include "biphoton/model/pump.hpp"

namespace biphoton {

enum class PmfShape { gaussian, sinc };

/// Phase-matching function Phi = Phi_nu(dnu) * Phi_q(dq) on the difference
/// coordinates dnu = nu_s - nu_i and dq = |q_s - q_i|. The spectral factor is
/// always the Gaussian exp(-dnu^2 / (2 sigma^2)); the spatial factor is either
/// a Gaussian in dq or sinc(dk_z L / 2) with the small-angle mismatch
/// dk_z = -dq^2 / (2 k_p).
///
/// Width defaults are declared config, not paper numbers: the paper gives no
/// numeric PMF widths, so the spectral width defaults to the value that makes
/// the joint spectral intensity uncorrelated (round) for the default pump,
/// which is what the custom-poled crystal is engineered for.
struct CrystalSpec {
    PmfShape shape = PmfShape::gaussian;
    double spectral_width = default_spectral_width();   // rad/fs, on dnu
    double spatial_width = 20.0;                        // rad/mm, on dq (gaussian shape)
    double pump_wavenumber = default_pump_wavenumber(); // k_p, rad/mm (sinc shape)
    double length_mm = 5.0;                             // crystal length L (sinc shape)

    /// Round-JSI condition: sigma_dnu = sqrt(2) * pump magnitude sigma.
    static double default_spectral_width() { return std::sqrt(2.0) * PumpSpec{}.magnitude_sigma(); }

    static double default_pump_wavenumber() {
        return units::wavenumber_rad_mm_from_wavelength_nm(PumpSpec{}.center_wavelength_nm);
    }

    void validate() const {
        if (!(spectral_width > 0.0)) throw ConfigError("crystal: spectral width must be > 0");
        if (!(spatial_width > 0.0)) throw ConfigError("crystal: spatial width must be > 0");
        if (!(pump_wavenumber > 0.0)) throw ConfigError("crystal: pump wavenumber must be > 0");
        if (!(length_mm > 0.0)) throw ConfigError("crystal: length must be > 0");
    }
};

namespace detail {
inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }
}

inline complexd phase_matching(const CrystalSpec& spec, double dq, double dnu) {
    spec.validate();
    double spectral = std::exp(-dnu * dnu / (2.0 * spec.spectral_width * spec.spectral_width));
    double spatial;
    if (spec.shape == PmfShape::gaussian) {
        spatial = std::exp(-dq * dq / (2.0 * spec.spatial_width * spec.spatial_width));
    } else {
        double dkz = -dq * dq / (2.0 * spec.pump_wavenumber);
        spatial = detail::sinc(0.5 * dkz * spec.length_mm);
    }
    return complexd(spectral * spatial, 0.0);
}

}  // namespace biphoton
