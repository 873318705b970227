#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/fft.hpp"
#include "biphoton/core/field.hpp"
#include "biphoton/core/random.hpp"
#include "biphoton/core/units.hpp"
#include "biphoton/model/jsa.hpp"
#include "biphoton/model/spatial.hpp"

namespace biphoton {

enum class InterferometerArm { signal, idler };

inline const char* arm_name(InterferometerArm a) {
    return a == InterferometerArm::signal ? "signal" : "idler";
}

/// Shear/delay settings of the SSI. The delay phase is applied to the
/// unsheared arm as exp(+i nu tau) in the *relative* frequency of the sheared
/// photon; the constant absolute-frequency offset Omega_c tau is part of the
/// calibration and never simulated. Sub-bin shears are fine (Fourier shift).
struct ShearConfig {
    double shear = units::rad_fs_from_ghz(-150.0);  // rad/fs
    double delay = 2500.0;                          // fs
    InterferometerArm arm = InterferometerArm::signal;
    bool reference_blocked = false;  // true: only the direct arm -> S = |psi|^2

    void validate(bool for_gradient = false) const {
        if (!(delay > 0.0)) throw ConfigError("shear: delay must be > 0");
        if (for_gradient && shear == 0.0)
            throw ConfigError("shear: gradient runs need a nonzero shear");
        if (!std::isfinite(shear) || !std::isfinite(delay))
            throw ConfigError("shear: values must be finite");
    }

    int sheared_axis() const { return arm == InterferometerArm::signal ? 0 : 1; }
};

/// Net detection response. The DCF time-of-flight spectrometers are folded
/// into per-arm Gaussian spectral resolutions (the paper's own summary
/// numbers); total_counts is the coincidence budget of one interferogram.
struct DetectorConfig {
    double resolution_ssi_fwhm_nm = 0.084;     // arm that went through the SSI
    double resolution_direct_fwhm_nm = 0.169;  // directly detected arm
    double total_counts = 1.8e6;               // ~1 kcps x 30 min
    bool noiseless = false;

    void validate() const {
        if (resolution_ssi_fwhm_nm < 0.0 || resolution_direct_fwhm_nm < 0.0)
            throw ConfigError("detector: resolutions must be >= 0");
        if (!(total_counts >= 0.0)) throw ConfigError("detector: total_counts must be >= 0");
    }
};

struct Interferogram {
    RealField2D values;  // nonnegative, axes = (nu_s, nu_i)
    ShearConfig shear;
    DetectorConfig detector;
    PostSelection post;
    std::optional<std::uint64_t> noise_seed;  // nullopt = noiseless

    double sum() const {
        double s = 0.0;
        for (double v : values.values) s += v;
        return s;
    }
};

/// SSI pattern S = |psi exp(i nu_axis tau) + psi(nu_axis + Omega)|^2,
/// evaluated directly from the two arm amplitudes. With the reference arm
/// blocked this is the plain JSI.
inline Interferogram ssi_pattern(const JointSpectralField& jsa, const ShearConfig& cfg) {
    cfg.validate();
    Interferogram out;
    out.shear = cfg;
    out.post = jsa.post;
    out.values = RealField2D(jsa.psi.axis_a, jsa.psi.axis_b);

    if (cfg.reference_blocked) {
        for (size_t k = 0; k < jsa.psi.values.size(); ++k)
            out.values.values[k] = std::norm(jsa.psi.values[k]);
        return out;
    }

    const int axis = cfg.sheared_axis();
    ComplexField2D shifted = resample_shift(jsa.psi, axis, cfg.shear);
    const Axis& ax = (axis == 0) ? jsa.psi.axis_a : jsa.psi.axis_b;
    for (int i = 0; i < jsa.psi.na(); ++i) {
        for (int j = 0; j < jsa.psi.nb(); ++j) {
            double nu = ax.value(axis == 0 ? i : j);
            complexd a = jsa.psi.at(i, j) * std::polar(1.0, nu * cfg.delay);
            out.values.at(i, j) = std::norm(a + shifted.at(i, j));
        }
    }
    return out;
}

namespace detail {

/// Gaussian blur along one axis via multiplication in the conjugate domain
/// (exact continuous-kernel convolution for band-limited data; preserves the
/// total because the DC component is untouched).
inline RealField2D gaussian_blur_axis(const RealField2D& f, int axis, double fwhm) {
    if (fwhm == 0.0) return f;
    ComplexField2D c(f.axis_a, f.axis_b);
    for (size_t k = 0; k < f.values.size(); ++k) c.values[k] = f.values[k];
    ComplexField2D spec = fft1_along_axis(c, axis, FftDirection::forward);
    const Axis conj = (axis == 0) ? spec.axis_a : spec.axis_b;
    const double sigma = units::sigma_from_fwhm(fwhm);
    for (int i = 0; i < spec.na(); ++i)
        for (int j = 0; j < spec.nb(); ++j) {
            double t = conj.value(axis == 0 ? i : j);
            spec.at(i, j) *= std::exp(-0.5 * sigma * sigma * t * t);
        }
    ComplexField2D back = fft1_along_axis(spec, axis, FftDirection::inverse);
    RealField2D out(f.axis_a, f.axis_b);
    for (size_t k = 0; k < f.values.size(); ++k)
        out.values[k] = std::max(0.0, back.values[k].real());
    return out;
}

}  // namespace detail

/// Convolve each frequency axis with its arm's resolution kernel (nm FWHM
/// converted at the axis' absolute center).
inline Interferogram apply_detector(const Interferogram& ig) {
    ig.detector.validate();
    const int ssi_axis = ig.shear.sheared_axis();
    Interferogram out = ig;
    for (int axis = 0; axis < 2; ++axis) {
        const Axis& ax = (axis == 0) ? ig.values.axis_a : ig.values.axis_b;
        double fwhm_nm = (axis == ssi_axis) ? ig.detector.resolution_ssi_fwhm_nm
                                            : ig.detector.resolution_direct_fwhm_nm;
        if (fwhm_nm == 0.0) continue;
        double lambda = units::wavelength_nm_from_angular_frequency(ax.center);
        double fwhm = units::bandwidth_rad_fs_from_nm(fwhm_nm, lambda);
        if (fwhm >= 0.25 * ax.span())
            throw PreconditionError("apply_detector: resolution kernel (" + std::to_string(fwhm) +
                                    " rad/fs) is wider than 1/4 of the " +
                                    std::string(axis == 0 ? "signal" : "idler") + " axis span");
        out.values = detail::gaussian_blur_axis(out.values, axis, fwhm);
    }
    return out;
}

/// Scale to the coincidence budget and Poissonize. Pass-through when the
/// detector is flagged noiseless; the seed is recorded in the result.
inline Interferogram measure(const Interferogram& ig, const RandomStream& stream) {
    ig.detector.validate();
    if (ig.detector.noiseless) return ig;
    Interferogram out = ig;
    out.noise_seed = stream.seed();
    double total = ig.sum();
    if (ig.detector.total_counts == 0.0 || total == 0.0) {
        for (auto& v : out.values.values) v = 0.0;
        return out;
    }
    RealField2D means = ig.values;
    double scale = ig.detector.total_counts / total;
    for (auto& v : means.values) v *= scale;
    auto counts = poisson_sample(means, stream);
    for (size_t k = 0; k < counts.values.size(); ++k)
        out.values.values[k] = static_cast<double>(counts.values[k]);
    return out;
}

/// Spectrally resolved fringe scan of the spatial arm: at every raster point
/// the sheared-off reference (PCF-filtered fundamental Gaussian, flat
/// wavefront, delayed by tau) interferes with the signal field. The fringe
/// offset at a point equals the signal spatial phase there.
struct SpatialFringeConfig {
    double delay = 2500.0;          // fs (defaults to the SSI delay)
    double reference_waist_mm = 1.0;
    double reference_amplitude = 1.0;  // relative to the signal peak

    void validate() const {
        if (!(delay > 0.0)) throw ConfigError("fringe: delay must be > 0");
        if (!(reference_waist_mm > 0.0)) throw ConfigError("fringe: reference waist must be > 0");
        if (!(reference_amplitude > 0.0))
            throw ConfigError("fringe: reference amplitude must be > 0");
    }
};

struct SpatialFringePatterns {
    SpatialGrid grid;
    FrequencyGrid spectral_grid;
    double delay = 0.0;
    std::vector<std::vector<double>> spectra;  // [ix * n_y + iy][spectral bin]
};

inline SpatialFringePatterns spatial_fringe_pattern(const ComplexField2D& signal_amplitude,
                                                    const SpatialGrid& grid,
                                                    const std::vector<double>& spectral_magnitude,
                                                    const FrequencyGrid& spectral_grid,
                                                    const SpatialFringeConfig& cfg) {
    cfg.validate();
    grid.validate();
    spectral_grid.validate();
    if (static_cast<int>(spectral_magnitude.size()) != spectral_grid.n_points)
        throw ContractError("spatial_fringe_pattern: spectral magnitude size mismatch");

    // require >= 3 fringe periods inside the spectral intensity FWHM
    double peak = 0.0;
    for (double m : spectral_magnitude) peak = std::max(peak, m * m);
    int inside = 0;
    for (double m : spectral_magnitude) inside += (m * m >= 0.5 * peak);
    double band = inside * spectral_grid.spacing;
    double periods = band * cfg.delay / units::two_pi;
    if (periods < 3.0)
        throw ConfigError("spatial_fringe_pattern: only " + std::to_string(periods) +
                          " fringe periods resolved in-band; increase the delay");

    SpatialFringePatterns out;
    out.grid = grid;
    out.spectral_grid = spectral_grid;
    out.delay = cfg.delay;
    out.spectra.resize(static_cast<size_t>(grid.n_x) * grid.n_y);

    double sig_peak = signal_amplitude.max_abs();
    double ref_scale = cfg.reference_amplitude * (sig_peak > 0.0 ? sig_peak : 1.0);
    for (int ix = 0; ix < grid.n_x; ++ix)
        for (int iy = 0; iy < grid.n_y; ++iy) {
            complexd a = signal_amplitude.at(ix, iy);
            double r = ref_scale * std::exp(-(grid.x(ix) * grid.x(ix) + grid.y(iy) * grid.y(iy)) /
                                            (cfg.reference_waist_mm * cfg.reference_waist_mm));
            auto& spec = out.spectra[static_cast<size_t>(ix) * grid.n_y + iy];
            spec.resize(spectral_grid.n_points);
            for (int k = 0; k < spectral_grid.n_points; ++k) {
                double nu = spectral_grid.value(k);
                complexd field = a + r * std::polar(1.0, nu * cfg.delay);
                double m = spectral_magnitude[k];
                spec[k] = m * m * std::norm(field);
            }
        }
    return out;
}

}  // namespace biphoton
